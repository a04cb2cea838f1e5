import asyncio
import os
import sys
from typing import Sequence

from initialize import RunConfig, initialize
from python.helpers import errors, extract_tools, files, persist
from python.helpers.dotenv import load_dotenv
from python.helpers.errors import ClassificationError, HolomatError, NoConvergence, UsageError
from python.helpers.print_style import PrintStyle
from python.helpers.tool import Command, Response

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CLASSIFICATION = 2


def get_command(config: RunConfig) -> Command:
    classes = extract_tools.load_classes_from_folder("python/tools", config.command + ".py", Command)
    if not classes:
        raise UsageError(f"unknown command '{config.command}'")
    return classes[0](config=config, name=config.command)


async def run(config: RunConfig) -> Response:
    command = get_command(config)
    await command.before_execution()
    try:
        response = await command.execute()
    except (ClassificationError, NoConvergence) as e:
        # raised before the command could build its own report, e.g. a singular S in the spec file
        response = Response(
            body={"error": e.to_dict(), "log": command.log.output()},
            exit_code=EXIT_CLASSIFICATION,
            message=errors.error_text(e),
            summary={"outcome": type(e).__name__},
        )
    await command.after_execution(response)
    return response


def write_report(config: RunConfig, response: Response):
    report = persist.make_report(config.command, config.to_dict(), {**response.body, "exit_code": response.exit_code})
    text = persist.dumps(report)
    if config.out:
        files.write_file(os.path.abspath(config.out), text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    quiet = PrintStyle.quiet
    try:
        config = initialize(argv)
        # the report owns stdout when there is no --out
        PrintStyle.quiet = quiet or config.out is None
        response = asyncio.run(run(config))
        write_report(config, response)
        return response.exit_code
    except (HolomatError, OSError) as e:
        # usage, parse and I/O problems; domain errors such as OutOfDomain land here too
        PrintStyle.quiet = quiet
        PrintStyle.error(errors.error_text(e))
        return EXIT_USAGE
    finally:
        PrintStyle.quiet = quiet


if __name__ == "__main__":
    sys.exit(main())

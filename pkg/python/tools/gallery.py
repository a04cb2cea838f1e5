from python.helpers import gallery
from python.helpers.errors import UsageError
from python.helpers.matrix_core import RandomModel
from python.helpers.tool import Command, Response


class Gallery(Command):

    async def execute(self, **kwargs):
        if not self.is_gallery_source():
            raise UsageError(f"'{self.config.source}' is not a gallery entry (known: {', '.join(gallery.names())})")
        entry = self.gallery_entry()
        results = gallery.run_expectations(entry, RandomModel(self.settings["seed"]), self.settings["trials"])
        for result in results:
            self.log.log("verdict", result.name, "passed" if result.passed else "failed")
        passed = all(result.passed for result in results)
        return Response(
            body={"entry": entry.name, "params": entry.params, "expectations": results, "passed": passed},
            exit_code=0 if passed else 2,
            summary={result.name: "pass" if result.passed else "FAIL" for result in results},
        )

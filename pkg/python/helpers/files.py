import os


def read_file(_relative_path, _encoding="utf-8"):
    absolute_path = get_abs_path(_relative_path)
    if not os.path.isfile(absolute_path):
        raise FileNotFoundError(f"File '{_relative_path}' not found.")
    with open(absolute_path, "r", encoding=_encoding) as f:
        return f.read()


def write_file(relative_path: str, content: str, encoding: str = "utf-8"):
    abs_path = get_abs_path(relative_path)
    make_dirs(abs_path)
    # newline="" keeps reports byte-identical across platforms
    with open(abs_path, "w", encoding=encoding, newline="") as f:
        f.write(content)


def make_dirs(relative_path: str):
    abs_path = get_abs_path(relative_path)
    directory = os.path.dirname(abs_path)
    if directory:
        os.makedirs(directory, exist_ok=True)


def get_abs_path(*relative_paths):
    # absolute paths pass through os.path.join untouched
    return os.path.join(get_base_dir(), *relative_paths)


def exists(*relative_paths):
    path = get_abs_path(*relative_paths)
    return os.path.exists(path)


def get_base_dir():
    # Get the base directory from the current file path
    base_dir = os.path.dirname(os.path.abspath(os.path.join(__file__, "../../")))
    return base_dir

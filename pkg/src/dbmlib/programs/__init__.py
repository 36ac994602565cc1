"""Example programs shipped with the package."""
from importlib import resources
from pathlib import Path

CORPUS = ("bakery", "counter", "nested", "bubble_sort")


def program_path(name: str) -> Path:
    return Path(str(resources.files(__name__) / f"{name}.toy"))


def load_program(name: str):
    from ..frontend import parse_program

    return parse_program(program_path(name).read_text())

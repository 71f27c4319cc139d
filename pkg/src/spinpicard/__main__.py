"""Allow ``python -m spinpicard``."""

from .cli import run

run()

#!/usr/bin/env python3
"""
eplab entry point
Usage: python -m eplab <command> [options]
"""

import sys

from .cli.commands import cli


def main() -> None:
    cli(prog_name="eplab")


if __name__ == "__main__":
    sys.exit(main())

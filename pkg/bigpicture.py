#!/usr/bin/env python3
# encoding: utf-8

"""Big Picture command line"""

import sys

from controllers.BigPicture import run


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    if sys.version_info < (3, 9, 0):
        sys.stderr.write("You need python 3.9 or higher to run this script\n")
        exit(1)

    main()

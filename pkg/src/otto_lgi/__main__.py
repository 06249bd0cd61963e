import sys

from otto_lgi.cli import main

if __name__ == "__main__":
    sys.exit(main())

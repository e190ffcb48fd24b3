"""Allow ``python -m dancekit``."""

import sys

from dancekit.cli import main

if __name__ == '__main__':
    sys.exit(main())

"""Module entry point, so `python -m dihedral` works like the script."""

import sys

from .cli import main

sys.exit(main())

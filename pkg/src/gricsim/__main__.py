"""Allow running the CLI as ``python -m gricsim``."""

import sys

from .cli import main

sys.exit(main())

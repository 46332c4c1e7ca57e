"""Allow running the command-line interface as ``python3 -m collapse_lab``."""

import sys

from .cli import main

sys.exit(main())

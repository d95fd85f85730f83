"""python -m simple_rc"""

import sys

from .cli import main

sys.exit(main())

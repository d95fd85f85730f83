"""
Command-line entry script

Usage:
    python main.py test-group --adj g.csv --nodes 1,2,3,4,5,6 --seed 7
    python main.py simulate --example 1 --m 10 --k0 3 --theta 0.5 --reps 500 --seed 1

Run `python main.py --help` for all subcommands.
"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from simple_rc.cli import main

if __name__ == "__main__":
    sys.exit(main())

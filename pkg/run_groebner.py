"""
Groebner CLI
Entry point for the path algebra command line; see src/frontend/cli.py.
"""

import sys

from src.frontend.cli import main

if __name__ == "__main__":
    sys.exit(main())

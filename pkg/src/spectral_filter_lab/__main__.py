"""Main entry point for spectral-filter-lab.

Allows running the CLI as:
    python -m spectral_filter_lab theory --check bias
"""

import sys

from spectral_filter_lab.cli import main

if __name__ == "__main__":
    sys.exit(main())

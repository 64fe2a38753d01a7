#!/usr/bin/env python3
"""
Heisenberg Spectra: Weyl-Law Verification on Compact Heisenberg Quotients
=========================================================================

Run from the repository root:

    python3 heisenberg_spectra.py quotient --d 2 --ell 1,2 --c 1
    python3 heisenberg_spectra.py count --alpha 0 --lambda 10,100,1000
    python3 heisenberg_spectra.py verify --alpha 0 --lambda-decades 2:5 --svg convergence.svg

See ``src/cli.py`` for every subcommand and flag.
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())

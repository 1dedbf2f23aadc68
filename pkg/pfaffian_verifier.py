#!/usr/bin/env python3
"""
Exact verification toolkit for 6x6 skew matrices of linear forms on P^4

Usage:
    python pfaffian_verifier.py verify-tables --pretty
    python pfaffian_verifier.py classify --input data/fixtures/catalog_f.json
    python pfaffian_verifier.py closure --input data/fixtures/closure_f_x3_cubed.json
"""

import sys

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

from skewpfaff.api.cli import main

if __name__ == "__main__":
    sys.exit(main())

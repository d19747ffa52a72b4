#!/usr/bin/env python3
"""
ballcheck - Main entry point
"""

import sys

# Project root on the path for backend/ and frontend/ imports
sys.path.insert(0, ".")

from frontend.cli import cli


def main():
    """Run the command line interface"""
    cli(prog_name="ballcheck")


if __name__ == "__main__":
    main()

"""
Entry point for running parley as a module: python -m parley
"""

from parley.cli.main import main

if __name__ == "__main__":
    main()

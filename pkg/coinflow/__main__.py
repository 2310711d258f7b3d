# Core Library
import sys

# First party
from coinflow.cli import main

if __name__ == "__main__":
    sys.exit(main())

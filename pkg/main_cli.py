import os
import sys

# src/ layout: make the package importable without installing
sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

from ifpn_lab.cli import main

if __name__ == "__main__":
    sys.exit(main())

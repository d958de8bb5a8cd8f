import os
import sys

# Allow `python cvbench/run.py ...` from a source checkout
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.dirname(current_dir))

from cvbench.src.main import cli

if __name__ == "__main__":
    cli()

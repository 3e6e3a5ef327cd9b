import sys
from pathlib import Path

# make the high-precision oracle (tests/highprec.py) importable from any cwd
sys.path.insert(0, str(Path(__file__).resolve().parent))

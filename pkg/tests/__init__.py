import sys
from pathlib import Path

SOURCE_DIR = Path(__file__).resolve().parent.parent / "source"
DATA_DIR = Path(__file__).resolve().parent / "data"

if str(SOURCE_DIR) not in sys.path:
    sys.path.insert(0, str(SOURCE_DIR))

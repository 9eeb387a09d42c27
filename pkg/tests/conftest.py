import sys
from pathlib import Path

# make the sibling bruteforce oracle module importable from every test
sys.path.insert(0, str(Path(__file__).parent))

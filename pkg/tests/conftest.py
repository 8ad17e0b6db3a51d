import sys
from pathlib import Path

# Tests import shared fixtures/oracles as plain modules.
sys.path.insert(0, str(Path(__file__).parent))

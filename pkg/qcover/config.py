import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent
DATA_PATH = BASE_DIR / "data"

SEED = int(os.getenv("QCOVER_SEED", "0xC0FFEE"), 0)
CLOSURE_CAP = int(os.getenv("QCOVER_CLOSURE_CAP", "1000000"))
HORN_SAMPLES = int(os.getenv("QCOVER_HORN_SAMPLES", "1000"))
REWRITE_DEPTH = int(os.getenv("QCOVER_REWRITE_DEPTH", "4"))
REWRITE_LENGTH_CAP = int(os.getenv("QCOVER_REWRITE_LENGTH_CAP", "32"))
REWRITE_STATE_CAP = int(os.getenv("QCOVER_REWRITE_STATE_CAP", "20000"))
SNF_MAX_ENTRY = int(os.getenv("QCOVER_SNF_MAX_ENTRY", str(10**30)))
LOG_LEVEL = os.getenv("QCOVER_LOG_LEVEL", "WARNING")

# Property batteries
SUITE_SAMPLES = int(os.getenv("QCOVER_SUITE_SAMPLES", "200"))
# free-word batteries
FREE_SAMPLES = int(os.getenv("QCOVER_FREE_SAMPLES", "10000"))
KERNEL_SAMPLES = int(os.getenv("QCOVER_KERNEL_SAMPLES", "1000"))
MAX_RACK_ORDER = 6

import os

from dotenv import load_dotenv

load_dotenv()

class Config:
    THREADS = int(os.getenv("EXPANDER_GROWTH_THREADS", 1))
    TOL = float(os.getenv("EXPANDER_GROWTH_TOL", 1e-6))
    MAX_ITER = int(os.getenv("EXPANDER_GROWTH_MAX_ITER", 100_000))
    SEED = int(os.getenv("EXPANDER_GROWTH_SEED", 0))

    SNAPSHOT_EVERY = int(os.getenv("EXPANDER_GROWTH_SNAPSHOT_EVERY", 1000))
    ESTIMATE_EVERY = int(os.getenv("EXPANDER_GROWTH_ESTIMATE_EVERY", 1000))
    SAMPLES = int(os.getenv("EXPANDER_GROWTH_SAMPLES", 100))
    CURVE_GRID = int(os.getenv("EXPANDER_GROWTH_CURVE_GRID", 1001))

    LOG_LEVEL = os.getenv("EXPANDER_GROWTH_LOG_LEVEL", "WARNING").upper()

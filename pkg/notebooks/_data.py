"""Shared helper: the bundled zero table if present, else a synthetic stand-in."""

from pathlib import Path

from zetacorr import load_zeros, synthetic_catalog

TABLE = Path(__file__).resolve().parents[1] / "data" / "zeros_100k.txt"


def catalog(t_max=12_000.0):
    if TABLE.exists():
        return load_zeros(TABLE)
    print(f"(zero table missing, using a synthetic GUE-like catalog up to {t_max})")
    return synthetic_catalog("unfolded-model", seed=0, t_max=t_max)

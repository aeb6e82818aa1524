# %% [markdown]
# # A full config-driven run
#
# configs/acceptance.toml drives every stanza against the bundled table and
# writes CSV tables plus a JSON summary.  Tolerances sit in the config.

# %%
from pathlib import Path

from zetacorr import experiment

root = Path(__file__).resolve().parents[1]
cfg = experiment.load_config(root / "configs" / "acceptance.toml")
bundle = experiment.run_experiment(cfg)
paths = experiment.write_bundle(bundle, root / "out" / "acceptance")
print(f"{bundle.n_passed}/{len(bundle.reports)} reports pass; wrote {len(paths)} files")

# %%
for stanza, r in bundle.reports:
    if not r.passed:
        print(f"{stanza:16s} {r.name:45s} measured {r.measured:.4g}  predicted {r.predicted:.4g}")

"""Optional matplotlib helper shared by the demos; skipped when matplotlib is absent."""

from pathlib import Path

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

OUT = Path(__file__).with_name("figures")


def save(fig_fn, name):
    """Call ``fig_fn(ax)`` on a fresh axis and save it under demos/figures/."""
    if plt is None:
        print(f"(matplotlib not installed, skipping {name})")
        return
    OUT.mkdir(exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    fig_fn(ax)
    fig.tight_layout()
    fig.savefig(OUT / name, dpi=120)
    plt.close(fig)
    print(f"wrote {OUT / name}")

"""Map the (a, alpha) region where the gap condition holds.

Parametrize block Bell-diagonal states by gamma = alpha * a and
beta = 1/2 - alpha.  The gap condition

    H((1+a) alpha, (1-a) alpha, 1/2 - alpha, 1/2 - alpha) < 2 alpha

marks every pair (a, alpha) whose state family separates the
device-independent from the device-dependent key.  The sweep is written to
gap_region.csv; at a = 1 the region starts near alpha = 0.4147 (and at
a = 0 it is empty: there H = h(2 alpha) + 1 >= 1 >= 2 alpha always).
"""

from diqkd_bounds import gap_condition, region_sweep
from diqkd_bounds.serialize import region_to_csv

points = region_sweep(41, 41)
with open("gap_region.csv", "w", encoding="utf-8", newline="") as fh:
    fh.write(region_to_csv(points))
in_gap = [pt for pt in points if pt.in_gap]
print(f"swept 41 x 41 grid; {len(in_gap)} points in the gap -> gap_region.csv")

# bisect the left edge of the region along a few columns
print("\n  a      least alpha in gap")
for a in (1.0, 0.9, 0.75, 0.6, 0.5):
    lo, hi = 0.0, 0.5
    if not gap_condition(hi, a).in_gap:
        print(f"{a:5.2f}   (column empty)")
        continue
    while hi - lo > 1e-9:
        mid = (lo + hi) / 2
        if gap_condition(mid, a).in_gap:
            hi = mid
        else:
            lo = mid
    print(f"{a:5.2f}   {hi:.7f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [pt.a for pt in in_gap]
    ys = [pt.alpha for pt in in_gap]
    plt.figure(figsize=(5, 4))
    plt.scatter(xs, ys, s=6)
    plt.xlabel("a")
    plt.ylabel("alpha")
    plt.title("pairs (a, alpha) with an established gap")
    plt.tight_layout()
    plt.savefig("gap_region.png", dpi=150)
    print("\nwrote gap_region.png")
except ImportError:
    print("\nmatplotlib not available; skipped the plot (CSV is the contract)")

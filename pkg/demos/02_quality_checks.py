"""
Completeness, outliers, and duplicate rows
==========================================
"""

from readiness import completeness, duplicates, outliers
from readiness.sample_data import german_credit_dataset

ds = german_credit_dataset()

# completeness: fraction of non-missing cells, per column and overall
comp = completeness(ds)
print(f"overall completeness: {comp.overall:.3f}")
for name, frac in sorted(comp.per_column.items(), key=lambda kv: kv[1]):
    if frac < 1.0:
        print(f"  {name:<18} {frac:.3f}")

# outliers: Tukey fences at k = 1.5 interquartile ranges
out = outliers(ds)
print(f"\noutlier fraction (mean over numeric columns): {out.overall:.3f}")
for name, frac in sorted(out.per_column.items()):
    lo, hi = out.fences[name]
    print(f"  {name:<18} {frac:.3f}   fences [{lo:.1f}, {hi:.1f}]")

# widening k moves the fences outward and can only shrink the fractions
wide = outliers(ds, k=3.0)
print(f"\nwith k=3.0 the mean fraction drops to {wide.overall:.3f}")

dup = duplicates(ds)
print(f"\nduplicate rows: {dup.duplicate_row_count} (score {dup.score})")

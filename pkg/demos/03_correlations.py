"""
Correlation matrices for numeric and categorical columns
=========================================================

Pearson covers the numeric columns; Theil's U covers the categorical
ones.  Theil's U is asymmetric: U(X|Y) asks how much of X's entropy Y
explains, which is not the same question as U(Y|X).
"""

from pathlib import Path

from readiness import pearson_matrix, theils_u, theils_u_matrix
from readiness.charts import ChartSpec, Series, render_svg
from readiness.sample_data import german_credit_dataset

out = Path(__file__).parent / "demo_output"
out.mkdir(exist_ok=True)

ds = german_credit_dataset()

pearson = pearson_matrix(ds)
print("pearson:", ", ".join(pearson.labels))
print(f"  corr(Credit amount, Duration) = "
      f"{pearson.value('Credit amount', 'Duration'):+.3f}")

u = theils_u_matrix(ds)
print(f"\ntheils u over {len(u.labels)} categorical columns")
print(f"  U(Housing | Purpose) = {u.value('Housing', 'Purpose'):.3f}")
print(f"  U(Purpose | Housing) = {u.value('Purpose', 'Housing'):.3f}")

# the pairwise function accepts plain sequences too
x = ["a", "a", "b", "b"]
y = ["p", "q", "p", "p"]
print(f"\nhand pair: U(x|y)={theils_u(x, y):.3f}  U(y|x)={theils_u(y, x):.3f}")

# both matrices render as heatmaps
for matrix, fname in ((pearson, "pearson.svg"), (u, "theils_u.svg")):
    spec = ChartSpec(
        "heatmap",
        f"{matrix.kind} matrix",
        labels=matrix.labels,
        series=tuple(
            Series(label, tuple(row)) for label, row in zip(matrix.labels, matrix.values)
        ),
    )
    print("wrote", render_svg(spec, out / fname))

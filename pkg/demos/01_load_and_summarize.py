"""
Loading a CSV and summarizing its columns
=========================================
"""

from pathlib import Path

from readiness import load_csv, summarize, write_csv
from readiness.sample_data import german_credit_dataset

out = Path(__file__).parent / "demo_output"
out.mkdir(exist_ok=True)

# the package ships a bundled credit-scoring dataset generator; write it
# to disk once so the rest of the script works from a plain CSV file
csv_path = out / "credit.csv"
write_csv(german_credit_dataset(), csv_path)

ds = load_csv(csv_path)
print(f"loaded {ds.name!r}: {ds.row_count} rows, {len(ds.columns)} columns")

# summarize() computes per-column statistics: quartiles for numeric
# columns, distinct counts and top values for categorical ones
s = summarize(ds)
for col in s.per_column:
    if col.mean is not None:
        print(f"  {col.name:<18} numeric      mean={col.mean:8.1f}  "
              f"median={col.median:8.1f}  missing={col.missing}")
    else:
        top_label, top_count = col.top_values[0]
        print(f"  {col.name:<18} categorical  distinct={col.distinct:<4} "
              f"top={top_label!r} ({top_count})  missing={col.missing}")

"""
Scoring metadata against the FAIR principles
============================================
"""

from pathlib import Path

from readiness import fair_score
from readiness.faircheck import catalog_from_dict
from readiness.report import fair_compliance_pie
from readiness.charts import render_svg

out = Path(__file__).parent / "demo_output"
out.mkdir(exist_ok=True)

# a partial DCAT record: identification and licensing are covered, but
# nothing says how to actually fetch the data
record = {
    "identifier": "doi:10.0/city-sensors",
    "title": "City sensor archive",
    "description": "Hourly readings from municipal sensors.",
    "keyword": ["sensors", "environment"],
    "license": "https://creativecommons.org/licenses/by/4.0/",
    "maintainerEmail": "data@example.org",
}

score = fair_score(catalog_from_dict(record, "dcat"))
print(f"FAIR score: {score.score_percent:.1f}%")
for principle, (done, total) in score.per_principle.items():
    missing = ", ".join(score.missing_elements[principle]) or "nothing"
    print(f"  {principle:<14} {done}/{total}  (missing: {missing})")
if score.other_keys:
    print(f"keys outside the check table: {', '.join(score.other_keys)}")

spec = fair_compliance_pie(score.per_principle, len(score.other_keys), score.dialect)
print("wrote", render_svg(spec, out / "fair_compliance.svg"))

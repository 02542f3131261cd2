"""
Group representation, statistical parity, and class imbalance
=============================================================
"""

from readiness import imbalance_degree, representation, statistical_rate, tsd
from readiness.sample_data import german_credit_dataset

ds = german_credit_dataset()

# representation: group proportions of a sensitive attribute and the
# ratio of the smallest to the largest group
rep = representation(ds, "Sex")
for group, prop in rep.proportions.items():
    print(f"  P(Sex={group}) = {prop:.3f}")
print(f"representation rate: {rep.representation_rate:.3f}")

# statistical rate: are target labels assigned at similar rates across
# groups?  1.0 means parity
sr = statistical_rate(ds, "Sex", "Risk")
for label, rate in sr.per_target_rate.items():
    print(f"  parity for Risk={label}: {rate:.3f}")
print(f"overall statistical rate: {sr.overall:.3f}")

# tsd: the spread of the conditional probabilities behind those ratios
spread = tsd(ds, "Sex", "Risk")
for label, value in spread.per_target.items():
    print(f"  std of P(Risk={label} | Sex) across groups: {value:.4f}")

# imbalance degree: distance of the class distribution from perfect
# balance, normalized so the integer part counts minority classes
imb = imbalance_degree(ds, "Purpose")
print(f"\nimbalance degree of Purpose: {imb.id_score:.3f} "
      f"({imb.minority_count} minority classes)")

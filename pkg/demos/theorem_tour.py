"""Run every theorem verifier on a few random instances.

Each verifier certifies its hypotheses, builds the transformed family or
operator, and certifies the claimed constants.  On the adversarial profile
the hypotheses fail and nothing is concluded.
"""
from modframe import theorems as th
from modframe.instances import generate

profile_of = {"range_inclusion_transfer": "range_included", "combine_orthogonal": "orthogonal_ranges"}

for tag in th.THEOREM_TAGS:
    profile = profile_of.get(tag, "free_commuting")
    statuses = []
    for seed in range(5):
        b = generate(seed, profile)
        rep = th.run_verifier(tag, b.instance, b.extras, seed=seed)
        statuses.append(rep.status)
    adv = generate(0, "noncommuting_adversarial")
    gated = th.run_verifier(tag, adv.instance, adv.extras).status
    print(f"{tag:28s} {profile:18s} {', '.join(sorted(set(statuses)))}; adversarial: {gated}")

# one report in detail
b = generate(3, "orthogonal_ranges")
rep = th.run_verifier("combine_orthogonal", b.instance, b.extras)
print()
for k, v in rep.claimed_constants.items():
    print(f"  {k:15s} {v}")
for k, v in rep.checks.items():
    print(f"  check {k:22s} {v.status.value}")

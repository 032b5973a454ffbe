#!/usr/bin/env python3
"""Cross-check the all-1/2 rule against the endpoint-multiset oracle on
random profiles and report the disagreement count (expected: zero)."""

import argparse
import json
import random
import sys

from intervalvote.rules import endpoint_median_oracle, endpoint_median_rule
from intervalvote.search import random_profile


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=500)
    parser.add_argument("--m-max", type=int, default=8)
    parser.add_argument("--n-max", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    disagreements = []
    for _ in range(args.count):
        m = rng.randint(2, args.m_max)
        n = rng.randint(1, args.n_max)
        p = random_profile(m, n, seed=rng.randrange(2**31))
        via_rule = endpoint_median_rule(m).winner(p)
        via_oracle = endpoint_median_oracle(p)
        if via_rule != via_oracle:
            disagreements.append(
                {"profile": p.to_json(), "rule": via_rule, "oracle": via_oracle}
            )
    print(
        json.dumps(
            {
                "checked": args.count,
                "disagreements": disagreements,
            }
        )
    )
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())

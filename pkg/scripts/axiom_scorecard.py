#!/usr/bin/env python3
"""Audit the endpoint-median rule and every counterexample fixture
against the five characterization axioms and print a scorecard."""

import argparse
import json
import sys

from intervalvote.axioms import RuleFn
from intervalvote.rules import endpoint_median_rule
from intervalvote.search import FIXTURE_TAGS, SearchBounds, falsify, fixture

AXIOMS = ("robustness", "reinforcement", "unanimity", "anonymity", "continuity")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--n-max", type=int, default=4)
    parser.add_argument("--pair-budget", type=int, default=5)
    parser.add_argument("--lambda-max", type=int, default=100)
    args = parser.parse_args()

    bounds = SearchBounds(
        m_max=args.m,
        n_max=args.n_max,
        pair_budget=args.pair_budget,
        lambda_max=args.lambda_max,
    )
    rules = [RuleFn.from_ptr(endpoint_median_rule(args.m), name="endpoint-median")]
    rules.extend(fixture(tag, args.m) for tag in FIXTURE_TAGS)

    scorecard = {}
    for f in rules:
        row = {}
        for axiom in AXIOMS:
            campaign = falsify(f, axiom, bounds)
            if campaign.violation is not None:
                row[axiom] = "violation"
            elif campaign.undetermined:
                row[axiom] = "undetermined"
            else:
                row[axiom] = "clean"
        scorecard[f.name] = row
    print(json.dumps({"bounds": vars(args), "scorecard": scorecard}, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())

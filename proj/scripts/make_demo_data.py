"""Writes a synthetic course data set to data/: 441 participants whose
attribute columns follow the participant-sample marginals, four facilitators,
and a 72-day stream of homophilous, partly reciprocated interactions."""

import argparse
import csv
import random
from pathlib import Path

MARGINALS = {
    "region": {"International": 32, "Midwest": 77, "Northeast": 111, "South": 169, "West": 52},
    "gender": {"Female": 301, "Male": 140},
    "role": {"Teacher": 83, "Administrator": 91, "Technology/Media Staff": 162, "Other": 105},
    "grade": {"Generalist": 215, "Primary": 57, "Secondary": 153, "Post-Secondary": 16},
    "experience": {"<=10": 115, "11-20": 150, "20+": 176},
    "expert": {"Yes": 20, "No": 421},
    "willing": {"Yes": 69, "No": 372},
    "group": {"AC": 74, "DL": 50, "M": 58, "N": 119, "PD": 74, "PS": 66},
}
COLUMNS = ["region", "country", "gender", "role", "grade", "experience", "expert", "willing", "group"]


def participants(rng):
    n = 441
    cols = {}
    for name, counts in MARGINALS.items():
        values = [level for level, c in counts.items() for _ in range(c)]
        rng.shuffle(values)
        cols[name] = values
    cols["country"] = ["Non-US" if r == "International" else "US" for r in cols["region"]]
    rows = []
    for v in range(n):
        row = {"id": f"p{v + 1:03d}", "facilitator": "No"}
        row.update({c: cols[c][v] for c in COLUMNS})
        rows.append(row)
    for k in range(4):
        rows.append({"id": f"f{k + 1}", "facilitator": "Yes", **{c: rows[k][c] for c in COLUMNS}})
    return rows


def events(rng, rows, count):
    people = [r for r in rows if r["facilitator"] == "No"]
    facilitators = [r for r in rows if r["facilitator"] == "Yes"]
    # activity is heavy-tailed; a third of participants barely post
    weight = [rng.paretovariate(1.6) for _ in people]
    # mid-course peak, sharp decline at the end
    day_weight = [1.0 if d <= 18 else 1.1 if d <= 36 else 0.55 if d <= 55 else 0.25 for d in range(1, 73)]
    out = []
    while len(out) < count:
        day = rng.choices(range(1, 73), day_weight)[0]
        if rng.random() < 0.05:
            f = rng.choice(facilitators)
            p = rng.choice(people)
            out.append((f["id"], p["id"], day) if rng.random() < 0.5 else (p["id"], f["id"], day))
            continue
        s, r = rng.choices(people, weight, k=2)
        if s is r:
            continue
        if s["group"] != r["group"] and rng.random() < 0.6:
            continue
        out.append((s["id"], r["id"], day))
        if rng.random() < 0.2:
            out.append((r["id"], s["id"], min(72, day + rng.randint(0, 3))))
    return out[:count]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    ap.add_argument("--events", type=int, default=2600)
    ap.add_argument("--seed", type=int, default=2013)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    rows = participants(rng)
    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "demo_attrs.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, ["id", "facilitator"] + COLUMNS)
        w.writeheader()
        w.writerows(rows)
    with open(args.out / "demo_events.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sender_id", "receiver_id", "day"])
        w.writerows(events(rng, rows, args.events))


if __name__ == "__main__":
    main()

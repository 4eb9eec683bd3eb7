#!/usr/bin/env python3
"""Regenerate the bundled sample datasets in data/samples.

The files are synthetic: each response is a noisy monotone function of the
numeric columns, with an id column, a text column and a few missing cells so
the loader's cleaning rules are exercised. Output is deterministic.
"""

import json
import math
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "samples"


def cell(v, rng, missing="NA", rate=0.02):
    return missing if rng.random() < rate else f"{v:.4f}"


def airquality(path, seed, n, delimiter, site_names):
    rng = random.Random(seed)
    rows = [["id", "site", "temperature", "humidity", "wind", "no2", "ozone"]]
    for i in range(n):
        temp = rng.gauss(22, 6)
        humidity = min(100.0, max(5.0, rng.gauss(60, 15)))
        wind = rng.expovariate(1 / 3.5)
        no2 = math.exp(rng.gauss(3, 0.5))
        ozone = 2.1 * temp - 0.3 * humidity - 3.0 * wind + 0.2 * no2 + rng.gauss(0, 6)
        rows.append([
            str(i + 1),
            rng.choice(site_names),
            cell(temp, rng),
            cell(humidity, rng),
            cell(wind, rng, "?"),
            cell(no2, rng, ""),
            cell(ozone, rng, "NA", 0.03),
        ])
    path.write_text("".join(delimiter.join(r) + "\n" for r in rows))


def concrete(path, seed, n):
    rng = random.Random(seed)
    rows = [["cement", "slag", "water", "superplasticizer", "age", "mix", "strength"]]
    for _ in range(n):
        cement = rng.uniform(100, 540)
        slag = max(0.0, rng.gauss(70, 80))
        water = rng.uniform(120, 250)
        plasticizer = max(0.0, rng.gauss(6, 5))
        age = rng.choice([3, 7, 14, 28, 56, 90, 180, 365])
        strength = (0.08 * cement + 0.05 * slag - 0.15 * water + 0.6 * plasticizer
                    + 9.0 * math.log(age) + rng.gauss(0, 4))
        rows.append([
            f"{cement:.1f}",
            cell(slag, rng, "?", 0.01),
            f"{water:.1f}",
            f"{plasticizer:.2f}",
            str(age),
            rng.choice(["\"standard, site\"", "precast", "ready"]),
            f"{strength:.3f}",
        ])
    path.write_text("".join(",".join(r) + "\n" for r in rows))


def housing(path, seed, n):
    rng = random.Random(seed)
    rows = [["rooms", "building_age", "distance", "crime", "zone", "price"]]
    for _ in range(n):
        rooms = rng.randint(1, 8)
        age = rng.uniform(0, 100)
        distance = rng.expovariate(1 / 4)
        crime = math.exp(rng.gauss(0, 1.2))
        price = math.exp(0.25 * rooms - 0.004 * age - 0.06 * distance - 0.1 * crime + rng.gauss(0, 0.15)) * 100
        rows.append([str(rooms), f"{age:.1f}", cell(distance, rng, "NaN", 0.01), f"{crime:.4f}",
                     rng.choice(["urban", "suburban", "rural"]), f"{price:.2f}"])
    path.write_text("".join(",".join(r) + "\n" for r in rows))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    airquality(OUT / "airquality_north.csv", 11, 180, ",", ["harbour", "hill", "centre"])
    airquality(OUT / "airquality_south.csv", 12, 150, ";", ["coast", "valley"])
    concrete(OUT / "concrete.csv", 13, 220)
    housing(OUT / "housing.csv", 14, 200)
    config = {
        "approaches": ["PROD", "MIN", "MAX", "SUM", "WSM", "WPM", "REG"],
        "seed": 42,
        "workers": 2,
        "output_dir": "bench_out",
        "datasets": [
            {"path": "airquality_north.csv", "response": "ozone", "drop": ["id"], "family": "airquality"},
            {"path": "airquality_south.csv", "response": "ozone", "drop": ["id"], "delimiter": ";",
             "family": "airquality"},
            {"path": "concrete.csv", "response": "strength"},
            {"path": "housing.csv", "response": "price"},
        ],
    }
    (OUT / "bench.json").write_text(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
    main()

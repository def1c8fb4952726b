#!/usr/bin/env python3
"""Regenerates the bundled stand-in benchmark corpus under data/.

The real benchmark datasets (auto-mpg, haberman, pima, breast-cancer-
wisconsin, car) are UCI Machine Learning Repository datasets and are not
redistributed here. This script writes synthetic stand-ins that reproduce the
documented preparation properties exactly -- column schemas, row counts,
missing-value placement, and class counts after binarization -- together with
qualitative-model files whose cardinalities match the equal-frequency
discretization of the generated data. Drop-in replacement with the real CSVs
(same headers) is supported; see data/README.md.

Deterministic: running it twice produces byte-identical files.
"""

import math
import random
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
SEED = 20260811


# ---------------------------------------------------------------------------
# Equal-frequency cut points (mirror of the C++ implementation)
# ---------------------------------------------------------------------------

def equal_frequency_cutpoints(values, bins):
    values = sorted(values)
    n = len(values)
    base, rem = divmod(n, bins)
    cuts = []
    pos = 0
    for g in range(bins - 1):
        pos += base + (1 if g < rem else 0)
        p = pos
        if p == 0 or p >= n:
            continue
        if values[p - 1] == values[p]:
            found = None
            for d in range(1, n):
                if p - d - 1 >= 0 and values[p - d - 1] != values[p - d]:
                    found = p - d
                    break
                if p + d < n and values[p + d - 1] != values[p + d]:
                    found = p + d
                    break
            if found is None:
                continue
            p = found
        cuts.append((values[p - 1] + values[p]) / 2.0)
    return sorted(set(cuts))


def sigmoid(x):
    return 1.0 / (1.0 + math.exp(-x))


def exact_count_labels(probs, positives, rng):
    """Noisy thresholding with an exact positive count.

    Rows with the largest p - u (u uniform) become positive, so the label is
    stochastic but monotone in p and the count is exact.
    """
    scored = [(p - rng.random(), i) for i, p in enumerate(probs)]
    scored.sort(reverse=True)
    labels = [0] * len(probs)
    for _, i in scored[:positives]:
        labels[i] = 1
    return labels


def f1(x):
    return f"{x:.1f}"


# ---------------------------------------------------------------------------
# auto-mpg: 398 raw rows, 6 with missing horsepower; of the 392 complete rows
# exactly 106 have mpg > 28.
# ---------------------------------------------------------------------------

def make_auto_mpg():
    rng = random.Random(SEED + 1)
    n = 398
    missing_idx = {31, 125, 329, 335, 353, 373}

    rows = []
    for i in range(n):
        origin = rng.choices([1, 2, 3], weights=[0.62, 0.17, 0.21])[0]
        year = rng.randint(70, 82)
        if i in (12, 101, 204, 310):
            cyl = 3
            origin = 3
        elif i in (55, 170, 288):
            cyl = 5
            origin = 2
        elif origin == 1:
            cyl = rng.choices([4, 6, 8], weights=[0.35, 0.30, 0.35])[0]
        else:
            cyl = rng.choices([4, 6, 8], weights=[0.82, 0.14, 0.04])[0]

        disp_mean = {3: 80, 4: 110, 5: 130, 6: 230, 8: 330}[cyl]
        disp_sd = {3: 8, 4: 20, 5: 12, 6: 25, 8: 40}[cyl]
        disp = min(max(rng.gauss(disp_mean, disp_sd), 68.0), 455.0)
        disp = float(f1(disp))

        hp = min(max(0.32 * disp + 28.0 + rng.gauss(0, 12), 46.0), 230.0)
        hp = float(f1(hp))

        weight = min(max(1500.0 + 5.3 * disp + rng.gauss(0, 260), 1613.0), 5140.0)
        weight = float(round(weight))

        accel = min(max(28.0 - 0.0033 * weight + rng.gauss(0, 1.6), 8.0), 24.8)
        accel = float(f1(accel))

        score = (-0.0052 * weight + 0.45 * (year - 76) + 2.2 * (1 if origin == 3 else 0)
                 + rng.gauss(0, 2.6))
        rows.append({
            "cylinders": cyl, "disp": disp, "horsepwr": hp, "weight": weight,
            "accel": accel, "modelyear": year, "origin": origin, "score": score,
        })

    # Rank-match mpg onto a fixed marginal so that exactly 106 complete rows
    # exceed the 28-mpg threshold.
    complete = [i for i in range(n) if i not in missing_idx]
    target = []
    for i in range(286):
        target.append(float(f1(9.0 + 19.0 * ((i + 0.5) / 286.0))))
    for i in range(106):
        target.append(float(f1(28.2 + 18.4 * ((i + 0.5) / 106.0) ** 1.3)))
    target.sort()
    order = sorted(complete, key=lambda i: rows[i]["score"])
    for rank, i in enumerate(order):
        rows[i]["mpg"] = target[rank]
    for i in missing_idx:
        rows[i]["mpg"] = float(f1(rng.uniform(12.0, 34.0)))

    lines = ["mpg,cylinders,disp,horsepwr,weight,accel,modelyear,origin"]
    for i, r in enumerate(rows):
        hp = "?" if i in missing_idx else f1(r["horsepwr"])
        lines.append(f"{f1(r['mpg'])},{r['cylinders']},{f1(r['disp'])},{hp},"
                     f"{int(r['weight'])},{f1(r['accel'])},{r['modelyear']},{r['origin']}")
    (DATA_DIR / "auto-mpg.csv").write_text("\n".join(lines) + "\n")

    kept = [r for i, r in enumerate(rows) if i not in missing_idx]
    assert len(kept) == 392
    assert sum(1 for r in kept if r["mpg"] > 28.0) == 106
    return kept


# ---------------------------------------------------------------------------
# haberman: 306 rows, no missing values, 225 survivors (status 1).
# ---------------------------------------------------------------------------

def make_haberman():
    rng = random.Random(SEED + 2)
    n = 306
    rows = []
    probs = []
    for _ in range(n):
        age = min(max(int(round(rng.gauss(52.5, 10.8))), 30), 83)
        year = rng.randint(58, 69)
        nodes = min(int(rng.expovariate(1 / 4.2)), 52)
        s = 1.8 - 0.016 * (age - 52) + 0.06 * (year - 63.5) - 0.10 * min(nodes, 25)
        rows.append([age, year, nodes])
        probs.append(sigmoid(s))
    labels = exact_count_labels(probs, 225, rng)

    lines = ["age,year,nodes,class"]
    for row, survived in zip(rows, labels):
        status = 1 if survived else 2
        lines.append(f"{row[0]},{row[1]},{row[2]},{status}")
    (DATA_DIR / "haberman.csv").write_text("\n".join(lines) + "\n")
    assert sum(labels) == 225
    return [r + [1 if s else 2] for r, s in zip(rows, labels)]


# ---------------------------------------------------------------------------
# pima: 768 rows, 268 positive.
# ---------------------------------------------------------------------------

def make_pima():
    rng = random.Random(SEED + 3)
    n = 768
    partial = []
    probs = []
    for _ in range(n):
        preg = min(int(rng.gauss(3.8, 3.4)) if rng.random() > 0.25 else 0, 17)
        preg = max(preg, 0)
        age = 21 + min(int(rng.expovariate(1 / 11.5)), 60)
        pedi = min(0.078 + rng.expovariate(1 / 0.35), 2.42)
        pedi = float(f"{pedi:.3f}")

        skin = 7 + 0.55 * preg + 0.12 * (age - 21) + 6.0 * pedi + rng.gauss(0, 7)
        skin = min(max(int(round(skin)), 7), 63)
        mass = 20.0 + 0.4 * preg + 0.10 * (age - 21) + 5.5 * pedi + rng.gauss(0, 5.5)
        mass = float(f1(min(max(mass, 18.2), 67.1)))

        s = (-3.6 + 0.10 * preg + 0.035 * (age - 21) + 0.9 * pedi
             + 0.045 * (skin - 7) + 0.075 * (mass - 20.0))
        partial.append([preg, skin, mass, pedi, age])
        probs.append(sigmoid(s))
    labels = exact_count_labels(probs, 268, rng)

    lines = ["preg,plas,pres,skin,insu,mass,pedi,age,class"]
    out_rows = []
    for (preg, skin, mass, pedi, age), cls in zip(partial, labels):
        plas = int(round(rng.gauss(140 if cls else 105, 28 if cls else 22)))
        plas = min(max(plas, 44), 199)
        pres = min(max(int(round(rng.gauss(75 if cls else 68, 12 if cls else 11))), 24), 122)
        insu = 14 + int(rng.gammavariate(2.0, 50.0 if cls else 75.0))
        insu = min(insu, 846)
        out_rows.append([preg, plas, pres, skin, insu, mass, pedi, age, cls])
        lines.append(f"{preg},{plas},{pres},{skin},{insu},{f1(mass)},{pedi:.3f},{age},{cls}")
    (DATA_DIR / "pima.csv").write_text("\n".join(lines) + "\n")
    assert sum(labels) == 268
    return out_rows


# ---------------------------------------------------------------------------
# bcw: 699 rows, 16 with missing bare-nuclei; the 683 complete rows hold 239
# malignant cases (class 4) and 444 benign (class 2).
# ---------------------------------------------------------------------------

def make_bcw():
    rng = random.Random(SEED + 4)
    n = 699
    missing_idx = set(rng.sample(range(n), 16))

    complete_idx = [i for i in range(n) if i not in missing_idx]
    malignant_idx = set(rng.sample(complete_idx, 239))
    malignant_idx |= set(rng.sample(sorted(missing_idx), 2))
    classes = [i in malignant_idx for i in range(n)]

    attrs = ["clumpthick", "cellsize", "cellshape", "adhesion", "epitsize",
             "barenucl", "blandchr", "normnuc", "mitoses"]

    def benign_value(attr):
        if attr == "mitoses":
            return 1 + min(int(rng.expovariate(4.0)), 9)
        return 1 + min(int(rng.expovariate(1.1)), 9)

    def malignant_value(attr):
        if attr == "mitoses":
            return 1 + min(int(rng.expovariate(0.45)), 9)
        return min(max(int(round(rng.gauss(6.5, 2.4))), 1), 10)

    lines = ["id," + ",".join(attrs) + ",malignant"]
    out_rows = []
    for i in range(n):
        malignant = classes[i]
        values = {a: (malignant_value(a) if malignant else benign_value(a)) for a in attrs}
        record = [str(1000025 + 1693 * i + rng.randint(0, 9))]
        for a in attrs:
            if a == "barenucl" and i in missing_idx:
                record.append("?")
            else:
                record.append(str(values[a]))
        record.append("4" if malignant else "2")
        lines.append(",".join(record))
        if i not in missing_idx:
            out_rows.append([values[a] for a in attrs] + [4 if malignant else 2])
    (DATA_DIR / "bcw.csv").write_text("\n".join(lines) + "\n")

    assert len(out_rows) == 683
    assert sum(1 for r in out_rows if r[-1] == 4) == 239
    return out_rows


# ---------------------------------------------------------------------------
# car: the full 1728-row attribute factorial with a monotone rule-based class;
# positives (anything better than unacc) must land in [511, 526] of 1728.
# ---------------------------------------------------------------------------

def make_car():
    buying_levels = ["vhigh", "high", "med", "low"]
    doors_levels = ["2", "3", "4", "5more"]
    persons_levels = ["2", "4", "more"]
    lug_levels = ["small", "med", "big"]
    safety_levels = ["low", "med", "high"]

    goodness = {"vhigh": 0, "high": 1, "med": 2, "low": 3,
                "small": 0, "big": 2,
                "2": 0, "3": 1, "4": 1, "5more": 1, "more": 2}
    g_person = {"2": 0, "4": 1, "more": 2}
    g_safety = {"low": 0, "med": 1, "high": 2}
    g_lug = {"small": 0, "med": 1, "big": 2}

    def label(buying, maint, doors, persons, lug, safety):
        if persons == "2" or safety == "low":
            return "unacc"
        # Two-door bodies cost one comfort point; the influence is real but
        # weak, which is why the network leaves the doors edge unannotated.
        u = (2 * goodness[buying] + 2 * goodness[maint] + 2 * g_safety[safety]
             + g_person[persons] + g_lug[lug] - (1 if doors == "2" else 0))
        nice_price = min(goodness[buying], goodness[maint]) >= 2
        if u >= 15 and nice_price and safety == "high":
            return "vgood"
        if u >= 13 and nice_price:
            return "good"
        if u >= 10:
            return "acc"
        return "unacc"

    lines = ["price,maint,doors,person,luggage,safety,class"]
    counts = {"unacc": 0, "acc": 0, "good": 0, "vgood": 0}
    rows = []
    for buying in buying_levels:
        for maint in buying_levels:
            for doors in doors_levels:
                for persons in persons_levels:
                    for lug in lug_levels:
                        for safety in safety_levels:
                            cls = label(buying, maint, doors, persons, lug, safety)
                            counts[cls] += 1
                            lines.append(f"{buying},{maint},{doors},{persons},{lug},{safety},{cls}")
                            rows.append((buying, maint, doors, persons, lug, safety, cls))
    (DATA_DIR / "car.csv").write_text("\n".join(lines) + "\n")
    positives = 1728 - counts["unacc"]
    assert 511 <= positives <= 526, counts
    return rows, counts


# ---------------------------------------------------------------------------
# Model files: cardinalities recomputed from the generated data with the same
# discretization the library applies.
# ---------------------------------------------------------------------------

HEADER = ("# {name} benchmark network; edges and monotone signs reconstructed from\n"
          "# the benchmark's prose description (the original diagram is unavailable).\n"
          "# Cardinalities match the bundled CSV at this bin count.\n")

AUTO_EDGES = [
    ("cylinders", "horsepwr", "q+"), ("cylinders", "disp", "q+"),
    ("cylinders", "weight", "q+"), ("disp", "horsepwr", "q+"),
    ("disp", "mpg", "q-"), ("weight", "mpg", "q-"), ("weight", "accel", "q-"),
    ("modelyear", "mpg", "q+"), ("origin", "mpg", "q+"),
]
PIMA_EDGES = [
    ("preg", "skin", "q+"), ("age", "skin", "q+"), ("pedi", "skin", "q+"),
    ("preg", "mass", "q+"), ("age", "mass", "q+"), ("pedi", "mass", "q+"),
    ("preg", "class", "q+"), ("pedi", "class", "q+"), ("age", "class", "q+"),
    ("skin", "class", "q+"), ("mass", "class", "q+"),
    ("class", "plas", "q+"), ("class", "pres", "q+"), ("class", "insu", "q-"),
]
BCW_ATTRS = ["clumpthick", "cellsize", "cellshape", "adhesion", "epitsize",
             "barenucl", "blandchr", "normnuc", "mitoses"]
HABERMAN_EDGES = [("age", "class", "q-"), ("year", "class", "q+"), ("nodes", "class", "q-")]
CAR_EDGES = [
    ("price", "class", "q-"), ("maint", "class", "q-"), ("safety", "class", "q+"),
    ("person", "class", "q+"), ("doors", "class", "none"),
    ("safety", "price", "q+"), ("person", "price", "q+"), ("luggage", "price", "q+"),
]


def card_of(values, bins):
    return len(equal_frequency_cutpoints(values, bins)) + 1


def write_model(path, name, variables, class_var, edges):
    lines = [HEADER.format(name=name), f"network {name}", ""]
    for var, card in variables:
        lines.append(f"var {var} {card}")
    lines.append("")
    lines.append(f"class {class_var}")
    lines.append("")
    for parent, child, sign in edges:
        lines.append(f"edge {parent} -> {child} {sign}")
    path.write_text("\n".join(lines) + "\n")


def emit_models(auto_rows, haberman_rows, pima_rows, bcw_rows, car_rows):
    models_dir = DATA_DIR / "models"
    models_dir.mkdir(exist_ok=True)

    car_codes = {
        "price": {"low": 0, "med": 1, "high": 2, "vhigh": 3},
        "maint": {"low": 0, "med": 1, "high": 2, "vhigh": 3},
        "doors": {"2": 0, "3": 1, "4": 2, "5more": 3},
        "person": {"2": 0, "4": 1, "more": 2},
        "luggage": {"small": 0, "med": 1, "big": 2},
        "safety": {"low": 0, "med": 1, "high": 2},
    }
    car_cols = ["price", "maint", "doors", "person", "luggage", "safety"]

    for bins in (2, 3, 5):
        auto_vars = [
            ("mpg", 2),
            ("cylinders", card_of([r["cylinders"] for r in auto_rows], bins)),
            ("disp", card_of([r["disp"] for r in auto_rows], bins)),
            ("horsepwr", card_of([r["horsepwr"] for r in auto_rows], bins)),
            ("weight", card_of([r["weight"] for r in auto_rows], bins)),
            ("accel", card_of([r["accel"] for r in auto_rows], bins)),
            ("modelyear", card_of([r["modelyear"] for r in auto_rows], bins)),
            ("origin", 2),
        ]
        write_model(models_dir / f"auto-mpg-{bins}.qm", f"auto-mpg-{bins}",
                    auto_vars, "mpg", AUTO_EDGES)

        hab_vars = [(name, card_of([r[i] for r in haberman_rows], bins))
                    for i, name in enumerate(["age", "year", "nodes"])]
        hab_vars.append(("class", 2))
        write_model(models_dir / f"haberman-{bins}.qm", f"haberman-{bins}",
                    hab_vars, "class", HABERMAN_EDGES)

        pima_cols = ["preg", "plas", "pres", "skin", "insu", "mass", "pedi", "age"]
        pima_vars = [(name, card_of([r[i] for r in pima_rows], bins))
                     for i, name in enumerate(pima_cols)]
        pima_vars.append(("class", 2))
        write_model(models_dir / f"pima-{bins}.qm", f"pima-{bins}",
                    pima_vars, "class", PIMA_EDGES)

        bcw_vars = [("malignant", 2)]
        bcw_vars += [(name, card_of([r[i] for r in bcw_rows], bins))
                     for i, name in enumerate(BCW_ATTRS)]
        write_model(models_dir / f"bcw-{bins}.qm", f"bcw-{bins}",
                    bcw_vars, "malignant",
                    [("malignant", a, "q+") for a in BCW_ATTRS])

        car_vars = []
        for col in car_cols:
            idx = car_cols.index(col)
            codes = [car_codes[col][r[idx]] for r in car_rows]
            car_vars.append((col, card_of(codes, bins)))
        car_vars.append(("class", 2))
        write_model(models_dir / f"car-{bins}.qm", f"car-{bins}",
                    car_vars, "class", CAR_EDGES)

        nodoors_vars = [(n, c) for n, c in car_vars if n != "doors"]
        nodoors_edges = [(p, c, s) for p, c, s in CAR_EDGES if p != "doors"]
        write_model(models_dir / f"car-nodoors-{bins}.qm", f"car-nodoors-{bins}",
                    nodoors_vars, "class", nodoors_edges)


def main():
    DATA_DIR.mkdir(exist_ok=True)
    auto_rows = make_auto_mpg()
    haberman_rows = make_haberman()
    pima_rows = make_pima()
    bcw_rows = make_bcw()
    car_rows, car_counts = make_car()
    emit_models(auto_rows, haberman_rows, pima_rows, bcw_rows, car_rows)
    print("auto-mpg: 392 complete rows, 106 positive")
    print("haberman: 306 rows, 225 positive")
    print("pima:     768 rows, 268 positive")
    print("bcw:      683 complete rows, 239 positive")
    print(f"car:      1728 rows, {1728 - car_counts['unacc']} positive "
          f"({car_counts})")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Build the offline newform fixture with PARI/GP.

Writes database-shaped JSON pages (newspaces, newforms, embedding twists)
that `cycrank ingest` reads through a file:// source. Per-space results are
cached so interrupted runs resume.

    python3 generate_fixture.py --out ../../data/lmfdb --cache /tmp/cycrank-fixture
"""

import argparse
import cmath
import json
import os
import sys
import time
from math import gcd

import conrey

THEOREM = {
    1: list(range(1, 37)) + [38, 39, 40, 41, 42] + list(range(44, 53)) + [54, 55, 56, 59, 60, 62, 64, 66]
    + [68, 69, 70, 71, 72, 75, 76, 78, 81, 84, 87, 90, 94, 96, 98, 100, 108, 110, 119]
    + [120, 132, 140, 150, 168, 180],
    2: list(range(1, 22)) + [24, 25, 26, 27, 30, 33, 35, 42, 45],
    3: list(range(1, 11)) + [12, 14, 16, 20],
    4: list(range(1, 7)),
    5: [1, 2, 3, 4, 6],
    6: list(range(1, 6)),
    7: [1, 2],
    8: [1], 9: [1], 10: [1], 12: [1],
}

# Pairs outside the theorem that the examples and cross-checks use.
EXTRA_PAIRS = [(4, 9), (11, 1), (13, 1), (14, 1), (15, 1), (3, 11), (3, 13), (4, 7), (5, 5), (7, 3)]

TRIVIAL_MAX_LEVEL = 500
FULL_MAX_LEVEL = 60
COEFFS = 300
PRIMES = [p for p in range(2, COEFFS + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]

GP_HELPERS = [r"""
cyc_embed(F, P, chipol, B) =
{
  my(v = liftall(mfcoefs(F, B)), Pl = liftall(P), tz = polroots(chipol), res = List());
  for (k = 1, #tz,
    my(Pz = substvec(Pl, ['t], [tz[k]]), r);
    r = if (poldegree(Pl, 'y) == 1, [-polcoef(Pz, 0, 'y) / polcoef(Pz, 1, 'y)], polroots(Pz));
    for (j = 1, #r,
      listput(res, vector(#v, n, my(c = substvec(v[n], ['t, 'y], [tz[k], r[j]])); [real(c), imag(c)]))));
  Vec(res);
}""", r"""
cyc_rank(mf, F) =
{
  my(l = lfunmf(mf, F));
  if (type(l[1]) == "t_VEC" && #l[1] >= 6, l = l[1]);
  if (lfuncheckfeq(l) > -60, error("cyc_rank: functional equation check failed"));
  for (k = 0, 5, if (abs(lfun(l, 1, k)) > 1e-25, return(k)));
  error("cyc_rank: order of vanishing above 5");
}"""]


def pairs():
    out = [(m, n) for m, ns in THEOREM.items() for n in ns]
    return sorted(set(out) | set(EXTRA_PAIRS))


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def required_spaces():
    """(level, orbit index) pairs needed by every pair's NF set, plus the
    trivial character at every level up to TRIVIAL_MAX_LEVEL and every
    character at levels up to FULL_MAX_LEVEL."""
    need = set((level, 0) for level in range(1, TRIVIAL_MAX_LEVEL + 1))
    for level in range(1, FULL_MAX_LEVEL + 1):
        need.update((level, idx) for idx in range(len(conrey.galois_orbits(level))))
    for m, n in pairs():
        for d in divisors(m * m * n):
            for idx, orb in enumerate(conrey.galois_orbits(d)):
                if (m * n) % conrey.conductor(d, orb[0]) == 0:
                    need.add((d, idx))
    return sorted(need)


def compute_space(pari, level, idx):
    orb = conrey.galois_orbits(level)[idx]
    rep = orb[0]
    o = conrey.order(level, rep)
    record = {
        "level": level,
        "orbit_index": idx,
        "conrey_indexes": orb,
        "char_order": o,
        "char_conductor": conrey.conductor(level, rep),
        "new_dim": 0,
        "cusp_dim": 0,
        "forms": [],
    }
    if not conrey.is_even(level, rep):
        return record
    deg = conrey.phi(o) if o > 2 else 1
    pari(f"cyc_mf = mfinit([{level}, 2, Mod({rep}, {level})], 0)")
    record["new_dim"] = int(pari("mfdim(cyc_mf)")) * deg
    record["cusp_dim"] = int(pari(f"mfdim([{level}, 2, Mod({rep}, {level})], 1)")) * deg
    if record["new_dim"] == 0:
        return record
    pari("cyc_L = mfeigenbasis(cyc_mf); cyc_P = mffields(cyc_mf); cyc_chipol = mfparams(cyc_mf)[5]")
    nforms = int(pari("#cyc_L"))
    al_primes = [p for p, _ in conrey.factor(level)] if o == 1 else []
    al = {}
    for p in al_primes:
        q = p ** dict(conrey.factor(level))[p]
        al[p] = pari(f"mfatkineigenvalues(cyc_mf, {q})")
    for i in range(nforms):
        emb = pari(f"cyc_embed(cyc_L[{i + 1}], cyc_P[{i + 1}], cyc_chipol, {COEFFS})")
        embeddings = [[complex(float(c[0]), float(c[1])) for c in e] for e in emb]
        rank = int(pari(f"cyc_rank(cyc_mf, cyc_L[{i + 1}])"))
        form = {
            "relative_dim": int(pari(f"poldegree(cyc_P[{i + 1}], 'y)")) or 1,
            "analytic_rank": rank,
            "embeddings": [[[c.real, c.imag] for c in e] for e in embeddings],
        }
        if o == 1:
            signs = []
            for p in al_primes:
                vals = {int(x) for x in al[p][i]}
                if len(vals) != 1:
                    raise RuntimeError(f"level {level}: non-constant AL sign at {p}")
                signs.append([p, vals.pop()])
            form["atkin_lehner"] = signs
        record["forms"].append(form)
    return record


def identify_character(level, orbit, coeffs):
    """Conrey index n in `orbit` with a_p = chi_n(p) conj(a_p) for p not dividing level."""
    best = None
    for n in orbit:
        err = 0.0
        for p in PRIMES:
            if level % p == 0:
                continue
            a = coeffs[p]
            if abs(a) < 0.25:
                continue
            err = max(err, abs(a - conrey.value(level, n, p) * a.conjugate()))
        if best is None or err < best[0]:
            best = (err, n)
    if best[0] > 1e-6:
        raise RuntimeError(f"level {level}: no character matches (err {best[0]})")
    for n in orbit:
        if n != best[1]:
            other = max((abs(coeffs[p] - conrey.value(level, n, p) * coeffs[p].conjugate())
                         for p in PRIMES if level % p and abs(coeffs[p]) >= 0.25), default=0)
            if other < 1e-6:
                raise RuntimeError(f"level {level}: character of embedding is ambiguous")
    return best[1]


def build_orbits(space):
    """Label the forms of one newspace and order their embeddings."""
    level = space["level"]
    orbit = space["conrey_indexes"]
    forms = []
    for f in space["forms"]:
        embs = [[complex(c[0], c[1]) for c in e] for e in f["embeddings"]]
        traces = []
        for n in range(1, COEFFS + 1):
            s = sum(e[n] for e in embs)
            if abs(s.imag) > 1e-6 or abs(s.real - round(s.real)) > 1e-6:
                raise RuntimeError(f"level {level}: trace a_{n} not integral: {s}")
            traces.append(int(round(s.real)))
        tagged = []
        for e in embs:
            n = identify_character(level, orbit, e)
            tagged.append((n, tuple((round(e[k].real, 8), round(e[k].imag, 8)) for k in range(2, 40)), e))
        tagged.sort(key=lambda t: (t[0], t[1]))
        per_char = {}
        for n, _, _ in tagged:
            per_char[n] = per_char.get(n, 0) + 1
        if sorted(per_char) != orbit or len(set(per_char.values())) != 1:
            raise RuntimeError(f"level {level}: embeddings do not cover the character orbit evenly")
        forms.append({"dim": len(embs), "traces": traces, "form": f, "embeddings": tagged})
    forms.sort(key=lambda g: (g["dim"], g["traces"]))
    for a, b in zip(forms, forms[1:]):
        if (a["dim"], a["traces"]) == (b["dim"], b["traces"]):
            raise RuntimeError(f"level {level}: two orbits share a trace form")
    return forms


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--cache", required=True)
    ap.add_argument("--page-size", type=int, default=500)
    ap.add_argument("--retrieved", default="2026-10-16")
    ap.add_argument("--rerank", action="store_true",
                    help="recompute analytic ranks of cached spaces with nontrivial character")
    args = ap.parse_args()

    from cypari import pari
    pari.allocatemem(4 * 10 ** 9)
    pari("default(realprecision, 50)")
    for fn in GP_HELPERS:
        pari(fn.strip())

    os.makedirs(args.cache, exist_ok=True)
    spaces = {}
    todo = required_spaces()
    start = time.time()
    for k, (level, idx) in enumerate(todo):
        path = os.path.join(args.cache, f"{level}_{idx}.json")
        if os.path.exists(path):
            with open(path) as fh:
                spaces[(level, idx)] = json.load(fh)
            if args.rerank and spaces[(level, idx)]["char_order"] > 1 and spaces[(level, idx)]["forms"]:
                rerank_space(pari, spaces[(level, idx)], path)
            continue
        t0 = time.time()
        rec = compute_space(pari, level, idx)
        with open(path + ".tmp", "w") as fh:
            json.dump(rec, fh)
        os.replace(path + ".tmp", path)
        spaces[(level, idx)] = rec
        dt = time.time() - t0
        if dt > 2:
            print(f"[{k + 1}/{len(todo)}] {level}.{idx} dim {rec['new_dim']} {dt:.1f}s "
                  f"(total {time.time() - start:.0f}s)", flush=True)

    write_pages(args, spaces)


def rerank_space(pari, rec, path):
    level, rep = rec["level"], rec["conrey_indexes"][0]
    pari(f"cyc_mf = mfinit([{level}, 2, Mod({rep}, {level})], 0); cyc_L = mfeigenbasis(cyc_mf)")
    changed = []
    for i, form in enumerate(rec["forms"]):
        rank = int(pari(f"cyc_rank(cyc_mf, cyc_L[{i + 1}])"))
        if rank != form["analytic_rank"]:
            changed.append((i, form["analytic_rank"], rank))
            form["analytic_rank"] = rank
    if changed:
        print(f"{level}.{rep}: rank changes {changed}", flush=True)
        with open(path + ".tmp", "w") as fh:
            json.dump(rec, fh)
        os.replace(path + ".tmp", path)


def embedding_label(orbit_label, n, i):
    return f"{orbit_label}.{n}.{i}"


def write_pages(args, spaces):
    space_rows, form_rows = [], []
    embeddings = {}  # label -> (level, coefficients)
    for (level, idx), sp in sorted(spaces.items()):
        letters = conrey.orbit_letters(idx)
        space_rows.append({
            "label": f"{level}.2.{letters}",
            "level": level,
            "weight": 2,
            "char_orbit_label": letters,
            "char_orbit_index": idx + 1,
            "char_conductor": sp["char_conductor"],
            "char_order": sp["char_order"],
            "conrey_indexes": sp["conrey_indexes"],
            "dim": sp["new_dim"],
            "cusp_dim": sp["cusp_dim"],
        })
        for h, g in enumerate(build_orbits(sp)):
            label = f"{level}.2.{letters}.{conrey.orbit_letters(h)}"
            row = {
                "label": label,
                "level": level,
                "weight": 2,
                "char_orbit_label": letters,
                "char_conductor": sp["char_conductor"],
                "char_order": sp["char_order"],
                "char_labels": [f"{level}.{n}" for n in sp["conrey_indexes"]],
                "conrey_indexes": sp["conrey_indexes"],
                "dim": g["dim"],
                "relative_dim": g["dim"] // len(sp["conrey_indexes"]),
                "analytic_rank": g["form"]["analytic_rank"],
                "hecke_orbit": h + 1,
                "trace_display": g["traces"][1:4],
            }
            if "atkin_lehner" in g["form"]:
                row["atkin_lehner_eigenvals"] = g["form"]["atkin_lehner"]
                sign = 1
                for _, s in g["form"]["atkin_lehner"]:
                    sign *= s
                row["fricke_eigenval"] = sign
            form_rows.append(row)
            counter = {}
            for n, _, coeffs in g["embeddings"]:
                counter[n] = counter.get(n, 0) + 1
                embeddings[embedding_label(label, n, counter[n])] = (level, n, coeffs)

    twist_rows = compute_twists(embeddings)
    os.makedirs(args.out, exist_ok=True)
    for name, rows in (("mf_newspaces", space_rows), ("mf_newforms", form_rows), ("mf_twists_cmf", twist_rows)):
        write_table(args.out, name, rows, args.page_size)
    print(f"{len(space_rows)} spaces, {len(form_rows)} orbits, {len(twist_rows)} twists")


def compute_twists(embeddings):
    import numpy as np

    labels = sorted(embeddings)
    levels = np.array([embeddings[l][0] for l in labels])
    coeffs = np.array([[embeddings[l][2][p] for p in PRIMES] for l in labels])
    rows = {}
    for m, n in pairs():
        if m < 3:
            continue
        bound = m * m * n
        in_nf = np.array([bound % embeddings[l][0] == 0
                          and (m * n) % conrey.conductor(embeddings[l][0], embeddings[l][1]) == 0 for l in labels])
        idx_nf = np.nonzero(in_nf)[0]
        good = np.array([bound % p != 0 for p in PRIMES])
        for chi in conrey.units(m):
            chi_vals = np.array([conrey.value(m, chi, p) for p in PRIMES])
            for i in idx_nf:
                key = (labels[i], f"{m}.{chi}")
                if key in rows:
                    continue
                want = coeffs[i] * chi_vals
                diff = np.abs(coeffs[idx_nf][:, good] - want[good]).max(axis=1)
                hits = idx_nf[diff < 1e-6]
                if len(hits) != 1:
                    raise RuntimeError(f"twist of {labels[i]} by {m}.{chi}: {len(hits)} matches")
                j = hits[0]
                rows[key] = {
                    "source_label": labels[i],
                    "twisting_char_label": f"{m}.{chi}",
                    "target_label": labels[j],
                    "target_level": int(levels[j]),
                }
    return [rows[k] for k in sorted(rows)]


def write_table(out, name, rows, page_size):
    pages = [rows[i:i + page_size] for i in range(0, len(rows), page_size)] or [[]]
    for k, page in enumerate(pages):
        body = {"table": name, "data": page}
        if k + 1 < len(pages):
            body["next"] = f"{name}.{k + 2}.json"
        with open(os.path.join(out, f"{name}.{k + 1}.json"), "w") as fh:
            json.dump(body, fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")


if __name__ == "__main__":
    sys.exit(main())

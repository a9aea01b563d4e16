"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are echoed in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""
import itertools
import math
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from freeshift import (AugmentationPlan, CylinderFamily, Group, Pattern, SamplerConfig,
                       Window, WindowConfiguration, WindowInstance, approx_coloring_count,
                       assemble_augmented_cover, brute_force_count, build_left_family,
                       canonical_witness, check_correctness, counting_lower_bound,
                       cyclic_approximation, family_breadth, family_width,
                       folner_entropy_estimate, freeness_patterns, neighbor_bound_audit,
                       orbit_escape_check, period_check, sample, sigma, transfer_patterns,
                       verify_avoidance, vertex_lll_count_bound)
from freeshift.constructor import augmented_instance, build_right_family
from freeshift.lll import log2_product_bound
from freeshift.sampler import empty_family

import oracle
from instances import F2, Z, matrix, z_family, z_pattern

LINES = []


def verdict(n, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} [{elapsed:.2f}s < {limit}s]"
    LINES.append(line)
    print(line, flush=True)
    return ok


def test_criterion_1_closed_forms():
    t = time.perf_counter()
    errs = []
    for k in (2, 3, 4, 5):
        errs.append(abs(family_breadth(empty_family(Z, k)) - math.log2(k)) <= 1e-6)
    for k, n in ((2, 1), (2, 3), (3, 2), (4, 2), (5, 1)):
        cells = [(i,) for i in range(n)]
        full = CylinderFamily([Pattern.from_mapping(Z, zip(cells, vals), k)
                               for vals in itertools.product(range(k), repeat=n)], k, Z)
        errs.append(abs(family_width(full) - math.log2(k)) <= 1e-9)
    for G, g in ((Z, (1,)), (Z, (3,)), (F2, (1, 2)), (Group.zd(2), (1, -1))):
        for k in (2, 3, 5):
            errs.append(abs(family_width(freeness_patterns(G, g, k)) - math.log2(k) / 2) <= 1e-9)
    ok = all(errs)
    assert verdict(1, ok, f"{sum(errs)}/{len(errs)} closed forms within tolerance",
                   time.perf_counter() - t, 1)


def test_criterion_2_counting_soundness():
    t = time.perf_counter()
    cases = matrix()
    rows = []
    for name, inst in cases:
        h = _passing_h(name)
        omega = canonical_witness(inst, h)
        rows.append(check_correctness(inst, omega).ok
                    and brute_force_count(inst) >= 2 ** counting_lower_bound(inst, omega))
    pinned = WindowInstance(Window.interval(0, 8), z_family("000"))
    count = brute_force_count(pinned)
    bound = log2_product_bound(pinned, canonical_witness(pinned, 1.0))
    pinned_ok = (count == 149 == oracle.FROZEN_NO000[8]
                 and abs(bound - oracle.FROZEN_PINNED_BOUND) < 1e-9
                 and 2 ** bound <= count)
    ok = len(cases) >= 20 and all(rows) and pinned_ok
    assert verdict(2, ok, f"{sum(rows)}/{len(cases)} instances sound; pinned 000/8 count="
                   f"{count} bound={bound:.4f} bits", time.perf_counter() - t, 30)


_H_CACHE = {}


def _passing_h(name):
    if not _H_CACHE:
        from freeshift.lll import largest_passing_h
        for nm, inst in matrix():
            _H_CACHE[nm] = largest_passing_h(inst)
    return _H_CACHE[name]


def _sampler_instances():
    out = [inst for _, inst in matrix()[::2]][:6]
    out.append(WindowInstance(Window.ball(Z, 100), z_family("00000")))
    out.append(WindowInstance(Window.ball(Z, 60), z_family("000000", "111111")))
    out.append(WindowInstance(Window.ball(Group.zd(2), 6),
                              CylinderFamily([Pattern.from_mapping(
                                  Group.zd(2), {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0,
                                                (2, 0): 0}, 2)], 2, Group.zd(2))))
    out.append(WindowInstance(Window.ball(F2, 3), CylinderFamily(
        [Pattern.from_mapping(F2, {g: 0 for g in F2.ball(1)}, 2)], 2, F2)))
    return out


def test_criterion_3_sampler_validity():
    t = time.perf_counter()
    insts = _sampler_instances()
    valid = same = 0
    for inst in insts:
        for seed in range(100):
            cfg = SamplerConfig(seed=seed)
            a = sample(inst, cfg, threads=1)
            b = sample(inst, cfg, threads=8)
            valid += verify_avoidance(a, inst) and verify_avoidance(b, inst)
            same += repr(a.values).encode() == repr(b.values).encode()
    total = 100 * len(insts)
    ok = len(insts) == 10 and valid == total and same == total
    assert verdict(3, ok, f"{valid}/{total} valid, {same}/{total} identical across 1/8 threads",
                   time.perf_counter() - t, 60)


def _exhaustive_escape(window, events, family):
    """Configs avoiding every event, and how many of them fail to escape on either side."""
    n = len(window)
    avoiding = failures = 0
    for vals in itertools.product((0, 1), repeat=n):
        if any(e.occurs(vals) for e in events):
            continue
        avoiding += 1
        x = WindowConfiguration(window, vals, 2)
        if not (orbit_escape_check(x, family, "left") and orbit_escape_check(x, family, "right")):
            failures += 1
    return avoiding, failures


def test_criterion_4_window_escape():
    t = time.perf_counter()
    fam = freeness_patterns(Z, (1,), 2)
    h = 0.8
    notes = []
    literal = True
    window = Window.interval(0, 14)
    for eps in (0.1, 0.01):
        V = build_left_family(fam, h, eps)
        small = sigma(V, h) < eps
        events = V.events_in(window)
        avoiding, failures = _exhaustive_escape(window, events, fam)
        literal &= small and failures == 0
        notes.append(f"eps={eps}: sigma={sigma(V, h):.3g} N={V.N} span={len(V.span)} "
                     f"in-window events={len(events)} non-escaping={failures}/{avoiding}")
    # supplement (a): a V whose span fits in 14 cells, exhaustively
    V2 = build_left_family(fam, h, 2.0)
    W2 = build_right_family(fam, h, 2.0)
    win = Window(Z, V2.span)
    ev = V2.events_in(win) + W2.events_in(win)
    av, fl = _exhaustive_escape(win, ev, fam)
    supp_a = len(win) == 14 and len(ev) >= 1 and fl == 0 and av < 2 ** 14
    # supplement (b): samples on windows holding the full span
    supp_b = True
    for eps in (0.1, 0.01):
        V = build_left_family(fam, h, eps)
        W = build_right_family(fam, h, eps)
        big = Window.ball(Z, len(V.span))
        inst = WindowInstance(big, CylinderFamily([], 2, Z))
        inst.extra_events = V.events_in(big) + W.events_in(big)
        for seed in range(20):
            x = sample(inst, SamplerConfig(seed=seed))
            supp_b &= (verify_avoidance(x, inst) and orbit_escape_check(x, fam, "left")
                       and orbit_escape_check(x, fam, "right"))
    notes.append(f"supplement exhaustive eps=2 on {len(win)} cells: "
                 f"{'ok' if supp_a else 'FAIL'} ({fl}/{av} non-escaping)")
    notes.append(f"supplement sampled eps=0.1,0.01 full span: {'ok' if supp_b else 'FAIL'}")
    ok = literal
    verdict(4, ok, "; ".join(notes), time.perf_counter() - t, 120)
    assert supp_a and supp_b
    assert ok, "literal |B| <= 14 check: no V translate fits, see decisions ledger"


def test_criterion_5_augmented_certificate():
    t = time.perf_counter()
    h = 0.8
    pool = [freeness_patterns(Z, (g,), 2) for g in (1, 2, 3)]
    pool.append(CylinderFamily([z_pattern("0000"), z_pattern("111")], 2, Z))
    pool.append(CylinderFamily([z_pattern("01"), z_pattern("10")], 2, Z))
    f2_pool = [freeness_patterns(F2, g, 2) for g in ((1,), (2,), (1, 2))]
    results = []
    for G, fams in ((Z, pool), (F2, f2_pool)):
        for M in (1, 2, 3):
            for combo in itertools.combinations(fams, M):
                plan = AugmentationPlan(CylinderFamily([], 2, G), h, list(combo))
                cover = assemble_augmented_cover(plan)
                results.append(cover.slack > 0
                               and cover.sigma_added < plan.initial_slack / 2
                               and cover.certificate.slack == cover.slack)
    ok = all(results)
    assert verdict(5, ok, f"{sum(results)}/{len(results)} plans certified with sigma_added "
                   f"< slack/2", time.perf_counter() - t, 10)


def test_criterion_6_freeness_forcing():
    t = time.perf_counter()
    detail = []
    ok = True
    for G, R in ((Z, 60), (F2, 5)):
        gammas = G.ball(2)[1:]
        plan = AugmentationPlan(CylinderFamily([], 2, G), 0.8,
                                [freeness_patterns(G, g, 2) for g in gammas])
        cover = assemble_augmented_cover(plan)
        inst = augmented_instance(Window.ball(G, R), cover)
        good = 0
        for seed in range(100):
            x = sample(inst, SamplerConfig(seed=seed))
            good += verify_avoidance(x, inst) and not any(period_check(x, g) for g in gammas)
        ok &= good == 100
        detail.append(f"{G!r} k=2 |gammas|={len(gammas)} events={len(inst.extra_events)}: "
                      f"{good}/100 aperiodic")
    assert verdict(6, ok, "; ".join(detail), time.perf_counter() - t, 60)


def test_criterion_7_sofic_chain():
    t = time.perf_counter()
    h = 0.9
    fam = z_family("0000000000")
    S = Z.ball(9)
    s = sigma(fam, h)
    F = [(0,), (1,), (2,)]
    chain = []
    for n in range(10, 21):
        alpha = cyclic_approximation(n, 36)
        vf = transfer_patterns(fam, alpha, S)
        bound = vertex_lll_count_bound(vf, 2, h, base=fam).per_vertex
        rep = approx_coloring_count(alpha, fam, 0.1, F, S=S)
        chain.append(rep.h >= bound - 1e-12 and bound >= 1 - s > h and rep.inclusion
                     and rep.count >= rep.forb_count)
    inclusion = []
    for n in range(17, 21):
        alpha = cyclic_approximation(n, 8)
        rep = approx_coloring_count(alpha, z_family("000"), 0.1, F, S=Z.ball(2))
        inclusion.append(rep.faithful_S4 and rep.inclusion
                         and rep.forb_count == oracle.FROZEN_CYCLIC_NO000[n])
    ok = all(chain) and all(inclusion)
    assert verdict(7, ok, f"chain {sum(chain)}/{len(chain)} (1-sigma={1 - s:.4f} > {h}); "
                   f"000 inclusion {sum(inclusion)}/{len(inclusion)} on n=17..20",
                   time.perf_counter() - t, 120)


def test_criterion_8_neighbor_audit():
    t = time.perf_counter()
    cases = matrix()
    violations = sum(len(neighbor_bound_audit(inst).violations) for _, inst in cases)
    assert verdict(8, violations == 0, f"{violations} violations over {len(cases)} instances",
                   time.perf_counter() - t, 5)


def test_criterion_9_entropy_sanity():
    t = time.perf_counter()
    empty = [folner_entropy_estimate(empty_family(Z, 2), n) for n in range(0, 5)]
    fam = z_family("000")
    lo = oracle.tribonacci_entropy()
    mono = True
    inside = True
    for n in (1, 2, 3):
        size = 2 * n + 1
        hi = math.log2(oracle.no000(size)) / size
        ests = [folner_entropy_estimate(fam, n, p) for p in range(0, 6)]
        mono &= all(b <= a + 1e-15 for a, b in zip(ests, ests[1:]))
        inside &= all(lo <= e <= hi + 1e-15 for e in ests)
    ok = all(e == 1.0 for e in empty) and mono and inside
    assert verdict(9, ok, f"empty family {set(empty)}; 000 nonincreasing={mono}, "
                   f"within [{lo:.5f}, unpadded]={inside}", time.perf_counter() - t, 60)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print("\n".join(["", "summary:"] + LINES))
    sys.exit(1 if failed else 0)

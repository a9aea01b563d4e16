"""Assemble an augmented cover that forces freeness and sample from it.

For every nonidentity g of length at most 2 the family {x(1) = x(g)} is a bad
family of width 1/2 < h. The product families built from them keep the
breadth slack positive, and samples avoiding them have no period in the ball.

    python3 demos/03_free_subshift.py
"""
from freeshift import (AugmentationPlan, CylinderFamily, Group, SamplerConfig, Window,
                       assemble_augmented_cover, freeness_patterns, period_check, sample,
                       verify_avoidance)
from freeshift.constructor import augmented_instance

for G, R in ((Group.zd(1), 60), (Group.free(2), 5)):
    gammas = G.ball(2)[1:]
    plan = AugmentationPlan(CylinderFamily([], 2, G), 0.8,
                            [freeness_patterns(G, g, 2) for g in gammas])
    cover = assemble_augmented_cover(plan)
    print(f"{G!r}: initial slack {plan.initial_slack:.4f}, added sigma "
          f"{cover.sigma_added:.5f}, certified slack {cover.slack:.4f}")
    for b in cover.bounds[:3]:
        print(f"   family {b['n']}: eps={b['epsilon']:.5f} N={b['N_left']} "
              f"sigma={b['sigma_left']:.2e}")
    inst = augmented_instance(Window.ball(G, R), cover)
    x = sample(inst, SamplerConfig(seed=1))
    periodic = [G.format(g) for g in gammas if period_check(x, g)]
    print(f"   {len(inst.extra_events)} product events, avoided={verify_avoidance(x, inst)}, "
          f"periods found: {periodic or 'none'}")

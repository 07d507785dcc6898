"""Independent reference values for the C++ tests.

Everything here is computed without the library: hand formulas, and MEE through the
classical elements (a, e, i, RAAN, argp, nu) instead of the direct vector formulas used in C++.
Run it to regenerate the constants pinned in tests/test_*.cpp.
"""

import math

MU_SUN = 1.32712440018e11
AU = 1.49597870691e8
G0 = 9.80665


def classical_mee(r, v, mu):
    rn = math.sqrt(sum(x * x for x in r))
    h = [r[1] * v[2] - r[2] * v[1], r[2] * v[0] - r[0] * v[2], r[0] * v[1] - r[1] * v[0]]
    hn = math.sqrt(sum(x * x for x in h))
    vv = sum(x * x for x in v)
    rv = sum(a * b for a, b in zip(r, v))
    e_vec = [((vv - mu / rn) * r[i] - rv * v[i]) / mu for i in range(3)]
    e = math.sqrt(sum(x * x for x in e_vec))
    inc = math.acos(h[2] / hn)
    node = [-h[1], h[0], 0.0]
    nn = math.hypot(node[0], node[1])
    raan = math.atan2(node[1], node[0])
    argp = math.atan2(sum(a * b for a, b in zip([h[1] * node[2] - h[2] * node[1], h[2] * node[0] - h[0] * node[2],
                                                   h[0] * node[1] - h[1] * node[0]], e_vec)) / hn,
                      sum(a * b for a, b in zip(node, e_vec)))
    cross_er = [e_vec[1] * r[2] - e_vec[2] * r[1], e_vec[2] * r[0] - e_vec[0] * r[2], e_vec[0] * r[1] - e_vec[1] * r[0]]
    nu = math.atan2(sum(a * b for a, b in zip(cross_er, h)) / hn, sum(a * b for a, b in zip(e_vec, r)))
    del nn
    p = hn * hn / mu
    lon = raan + argp
    return dict(p=p, f=e * math.cos(lon), g=e * math.sin(lon),
                h=math.tan(inc / 2) * math.cos(raan), k=math.tan(inc / 2) * math.sin(raan),
                L=math.atan2(math.sin(lon + nu), math.cos(lon + nu)))


def main():
    print("mass rate, T=0.6 N, Isp=3000 s:", repr(-0.6 / (3000 * G0)))
    c = 3000 * G0
    print("exhaust velocity:", repr(c))
    print("thrust costate rate u=[1,0,0], m=3000, c=29419.95:", repr(-(1 / 3000) * (1 - 3000 / 29419.95)))
    print("orbit-raising costate rate phi=pi/4, t=1:", repr(-math.sqrt(2) / (1 - 0.0749)))
    earth_67p = ([-10687809.15, -151602518.3, 8676.494013], [29.22497601, -2.197707221, 0.000972199])
    target_67p = ([-536251927.7, -126576922.3, 14541016.26], [-6.858900316, -13.35248149, -0.453167946])
    for name, (r, v) in (("earth_67p", earth_67p), ("target_67p", target_67p)):
        m = classical_mee(r, v, MU_SUN)
        print(name, {k: repr(x) for k, x in m.items()})
    tu = math.sqrt(AU ** 3 / MU_SUN)
    print("canonical time unit (s):", repr(tu), "days:", repr(tu / 86400))
    print("canonical thrust 0.6 N / 3000 kg:", repr(0.6 / 1000 / 3000 / (AU / tu ** 2)))


if __name__ == "__main__":
    main()

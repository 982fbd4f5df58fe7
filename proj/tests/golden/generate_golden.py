#!/usr/bin/env python3
# Copyright 2026 The qbridge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the golden sweep CSVs from the closed forms, independently of
the C++ code. Run from this directory: python3 generate_golden.py"""

import math


def axis(lo, hi, steps):
    return [hi if i == steps - 1 else lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def fmt(x):
    s = "%.7f" % x
    return "0.0000000" if s == "-0.0000000" else s


def classical(q, x0, x1):
    return max(q + (1 - q) * max(x1, 1 - x1), (1 - q) + q * max(x0, 1 - x0))


def point(pp, q):
    p = pp * pp + (1 - pp) * (1 - pp)
    ic = classical(q, pp, pp)
    in_region = False
    if 0 < q < 1 and 0 < p < 1:
        c = 0.5 * (q * q + (1 - q) ** 2) * (p * p - (1 - p) ** 2) / (q * (1 - q) * (p * p + (1 - p) ** 2))
        in_region = abs(c) <= 1
    if in_region:
        iq = 0.5 * (1 + math.sqrt(2) * math.sqrt(q * q + (1 - q) ** 2) * math.sqrt(p * p + (1 - p) ** 2))
        iq = max(iq, ic)
    else:
        iq = ic
    return p, ic, iq, "true" if in_region else "false"


def curves(pp, qs):
    rows = ["q,i_classical,i_quantum,in_region"]
    for q in qs:
        _, ic, iq, r = point(pp, q)
        rows.append(",".join([fmt(q), fmt(ic), fmt(iq), r]))
    return "\n".join(rows) + "\n"


def surface(pps, qs):
    rows = ["p_prime,p,q,i_classical,i_quantum,in_region"]
    for pp in pps:
        for q in qs:
            p, ic, iq, r = point(pp, q)
            rows.append(",".join([fmt(pp), fmt(p), fmt(q), fmt(ic), fmt(iq), r]))
    return "\n".join(rows) + "\n"


if __name__ == "__main__":
    with open("curves_p0.5_q101.csv", "w", newline="\n") as f:
        f.write(curves(0.5, axis(0, 1, 101)))
    with open("curves_p0.5_q11.csv", "w", newline="\n") as f:
        f.write(curves(0.5, axis(0, 1, 11)))
    with open("surface_11x11.csv", "w", newline="\n") as f:
        f.write(surface(axis(0, 1, 11), axis(0, 1, 11)))

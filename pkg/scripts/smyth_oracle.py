"""m(1 + u1 + u2 + u3): grid engine, adaptive 2-d quadrature and 7 zeta(3) / (2 pi^2).

    python3 scripts/smyth_oracle.py
"""

import cmath
import json
import math

from scipy import integrate, special

from heisdyn.numeric import mahler_n
from heisdyn.parse import parse


def main():
    f = parse("1+u1+u2+u3", "comm")
    rows = {f"grid_{n}": mahler_n(f, n).value for n in (16, 32, 64, 128)}

    def fn(t, s):
        return max(0.0, math.log(abs(1 + cmath.exp(1j * s) + cmath.exp(1j * t)) or 1e-300))
    v, err = integrate.dblquad(fn, 0, 2 * math.pi, 0, 2 * math.pi, epsabs=1e-10, epsrel=1e-10)
    rows["adaptive"] = v / (4 * math.pi ** 2)
    rows["closed_form"] = 7 * special.zeta(3) / (2 * math.pi ** 2)
    rows["log_of_closed_form"] = math.log(rows["closed_form"])
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()

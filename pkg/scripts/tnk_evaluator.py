"""Reference black-box evaluator speaking the external protocol.

Reads one line of two numbers from stdin, prints the TNK objectives on the
first line and the two constraint values (``<= 0`` feasible) on the second.
Pair it with ``scripts/tnk_external.spec`` to exercise the subprocess path:

    cmoead run --external-spec scripts/tnk_external.spec --generations 50 --seeds 2
"""

import math
import sys

x1, x2 = (float(t) for t in sys.stdin.readline().split())
h1 = 1.0 + 0.1 * math.cos(16.0 * math.atan2(x1, x2)) - x1 * x1 - x2 * x2
h2 = (x1 - 0.5) ** 2 + (x2 - 0.5) ** 2 - 0.5
print(repr(x1), repr(x2))
print(repr(h1), repr(h2))

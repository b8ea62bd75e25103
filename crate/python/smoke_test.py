"""Quick checks that the compiled module loads and agrees with known values."""

import json

import sigcocycle as sc

S = [[0, -1], [1, 0]]
T = [[1, 1], [0, 1]]
I2 = [[1, 0], [0, 1]]

assert sc.meyer_cocycle(S, S) == -2
assert sc.meyer_cocycle(I2, T) == 0

lines = [[[1], [0]], [[1], [1]], [[0], [1]]]
assert abs(sc.wall_maslov(*lines)) == 1

closed = [(S, T), (T, S)]
assert sc.bundle_signature(closed) == 0
assert sc.signature_mod(closed, 8) == 0
try:
    sc.bundle_signature([(S, T)])
except ValueError:
    pass
else:
    raise AssertionError("open monodromy accepted without open=True")
sc.bundle_signature([(S, T)], open=True)

assert sc.in_principal_congruence([[1, 4], [0, 1]], 4)
assert not sc.in_principal_congruence(T, 2)
assert sc.in_y([[1, 4], [0, 1]])
assert sc.in_k(I2)

assert sc.group_order(1, "sp_mod2") == 6
assert sc.group_order(2, "sp_mod4") == 737280
assert sc.enumerated_order(1, "sp_mod4") == 48
assert sc.enumerated_order(1, "h") == sc.group_order(1, "h")

standard = json.dumps({"m": 1, "cochain": {"breaks": ["0"], "values": [0]}})
assert sc.covering_number(standard) == 1

for cid, passed, line in sc.selftest(seed=0, quick=True):
    print(line)
    assert passed, line

print("smoke test ok")

"""Split the pants partition function into theta-free and one-theta parts.

With the pants connection depending on a parameter a, det K~ is a
polynomial Z0 + Z1 (6 + a^2).  Z0 counts multiwebs with no theta web around
the holes, Z1 those with one, and Z0 + 6 Z1 is the plain 3-dimer count.
"""
from multiwebs.generators import pants_suite
from multiwebs.skein import pants_Z1


def main():
    for name, g in pants_suite().items():
        try:
            r = pants_Z1(g)
        except ValueError as exc:
            print(f"{name:14s} not available: {exc}")
            continue
        print(f"{name:14s} Z0 = {r.Z0:6d}  Z1 = {r.Z1:5d}  Z3d = {r.Z3d:6d}  "
              f"Z0 + 6 Z1 == Z3d: {r.check}")


if __name__ == "__main__":
    main()

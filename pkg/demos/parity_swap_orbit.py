"""Follow one orbit of [0(2),1(2)] * [0(2),3(4)] and watch it run away.

The product is a piecewise affine map. Starting from 2 the orbit visits
0 and 1 and then roughly doubles at every step, so no power of the map can
be the identity. The same growth shows up symbolically: the modulus of
sigma**k keeps climbing.
"""
from classtrans import ct, evaluate, parity_swap_cycle_prefix, product_map
from classtrans.rcwa import canonicalize, compose, power_order_scan

swap = ct(0, 2, 1, 2)
slant = ct(0, 2, 3, 4)
sigma = product_map(swap, slant)

print("pieces of the product:")
print(sigma.table())

x, orbit = 2, [2]
for _ in range(10):
    x = evaluate(sigma, x)
    orbit.append(x)
print("\norbit of 2:", orbit)
print("closed form:", parity_swap_cycle_prefix(3, 4, 8))

print("\nmodulus of sigma**k:")
power = sigma
for k in range(1, 11):
    print(f"  k={k:2d}  modulus {power.modulus}")
    power = canonicalize(compose(power, sigma))

print("\npower scan:", power_order_scan(sigma))

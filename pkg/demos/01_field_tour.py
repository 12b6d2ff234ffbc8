"""
A tour of the finite field layer
================================

Elements of GF(q^m) are stored as plain ints: the base-q digits of the
integer are the polynomial coefficients, lowest degree first.  For
GF(16) = GF(2)[x]/(x^4 + x + 1) the element x is 0b0010 = 2.
"""

from secnc import ExtField

F = ExtField(2, 4)
print("field:", F)
print("modulus digits (low degree first):", F.modulus)

a, b = 6, 11  # x + x^2 and 1 + x + x^3
print("a + b =", F.add(a, b))
print("a * b =", F.mul(a, b))
print("a^-1  =", F.inv(a), "  check:", F.mul(a, F.inv(a)))

# the Frobenius map z -> z^q is linear over the base field and fixes
# exactly the base field
print("frobenius fixes 0 and 1:", F.frobenius(0), F.frobenius(1))
print("frobenius(a) == a*a:", F.frobenius(a) == F.mul(a, a))

# elements print as digit strings, again lowest degree first
for z in (0, 1, 2, 9):
    print(f"element {z:2d} as text: {F.format_element(z)}")

# a non-binary example; digits are space separated once q > 10
G = ExtField(11, 2)
print("GF(121) element 25 as text:", G.format_element(25))
print("parsed back:", G.parse_element("3 2"))

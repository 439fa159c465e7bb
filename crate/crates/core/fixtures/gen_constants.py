"""Regenerate constants.json with mpmath."""
import json
import mpmath

mpmath.mp.dps = 40
out = {
    "zeta_prime_minus_one": mpmath.nstr(mpmath.zeta(-1, derivative=1), 30),
    "zeta3": mpmath.nstr(mpmath.zeta(3), 30),
    "ln_glaisher": mpmath.nstr(mpmath.log(mpmath.glaisher), 30),
}
with open("constants.json", "w") as f:
    json.dump(out, f, indent=2)
    f.write("\n")

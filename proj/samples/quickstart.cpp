// Builds a small bimoment block, checks the LDU factorization, and compares
// the matrix-product stationary state of a 3-site chain with the exact one.

#include <iostream>

#include "biorth/biorth.hpp"

using namespace biorth;

int main()
{
    const AWParams p = AWParams::make(1, Rational(1, 2), Rational(-1, 3), Rational(-1, 4), Rational(1, 2));

    const BimomentMatrix B = bimoment_block(p, 3);
    std::cout << "B (4 x 4):\n";
    write_csv(std::cout, B.entries);

    const VerificationReport ldu = verify_ldu(p, 8);
    std::cout << "B = L D U on the 9 x 9 block: " << (ldu.all_pass() ? "holds" : "fails") << "\n";

    const HoppingRates r = to_rates(p);
    std::cout << "rates: alpha=" << r.alpha << " beta=" << r.beta << " gamma=" << r.gamma << " delta=" << r.delta << "\n";

    const ComparisonReport cmp = compare(3, p);
    for (const auto& v : cmp.variants)
        std::cout << to_string(v.variant) << ": " << (v.matches_oracle ? "matches" : "differs from") << " the exact state\n";
    write_csv(std::cout, cmp.oracle);
}

// Walks through the cone on a hexagon: strata, allowable simplices, the two
// theories for each apex perversity, and Poincare duality relative to the rim.

#include <iostream>

#include "ihc/blowup.hpp"
#include "ihc/duality.hpp"
#include "ihc/topology/io.hpp"

int main(int argc, char** argv) {
    using namespace ihc;
    const std::string path = argc > 1 ? argv[1] : std::string(IHC_SAMPLES_DIR) + "/hexagon_cone.json";
    const FilteredComplex X = load_complex(path);
    const Coefficients Z = Coefficients::integers();

    std::cout << X.size() << " simplices\n";
    for (const auto& S : X.strata())
        std::cout << "stratum " << S.name << ": dim " << S.dim << (S.regular ? " regular" : " singular") << "\n";

    const auto apex = X.stratum_index(*X.find_vertex("a"));
    for (int pv = -1; pv <= 2; ++pv) {
        Perversity p(X);
        p.set(apex, pv);
        std::size_t allowable = 0;
        for (SimplexIndex s = 0; s < X.size(); ++s) allowable += is_allowable(X, s, p) ? 1 : 0;
        const auto tame = intersection_homology(X, p, ChainVariant::Tame, Z);
        const auto blown = blowup_cohomology(X, p, Z);
        std::cout << "\np(a) = " << pv << ": " << allowable << " allowable simplices\n";
        for (int k = 0; k <= 2; ++k)
            std::cout << "  k=" << k << "  tame h_k = " << to_string(tame.at(k), Z)
                      << "  blown-up H^k = " << to_string(blown.at(k), Z) << "\n";
    }

    // with the rim as boundary the pairing is with relative tame homology
    const SimplexMask rim = boundary_subcomplex(X);
    Perversity zero(X);
    const auto rel = intersection_homology(X, zero, ChainVariant::Tame, Z, &rim);
    const auto blown = blowup_cohomology(X, zero, Z);
    std::cout << "\nduality, zero perversity\n";
    for (int k = 0; k <= 2; ++k)
        std::cout << "  H^" << k << " = " << to_string(blown.at(k), Z) << "   h_" << 2 - k << "(X, rim) = "
                  << to_string(rel.at(2 - k), Z) << "\n";
}

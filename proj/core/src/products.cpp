#include "qdnls/products.hpp"

#include <stdexcept>

namespace qdnls {

namespace {

void check_lattices(const SpectralField& a, const SpectralField& b) {
    if (a.lattice() != b.lattice())
        throw std::invalid_argument("product factors must share a lattice");
}

std::vector<Complex> physical_component(const SpectralField& f, int component, bool conj) {
    std::vector<Complex> g = to_physical(f, component);
    if (conj)
        for (auto& z : g) z = std::conj(z);
    return g;
}

} // namespace

SpectralField pointwise_product(const SpectralField& a, const SpectralField& b,
                                bool conj_a, bool conj_b) {
    check_lattices(a, b);
    const bool a_scalar = a.components() == 1;
    const bool b_scalar = b.components() == 1;
    if (!a_scalar && !b_scalar && a.components() != b.components())
        throw std::invalid_argument("componentwise product needs matching or scalar factors");

    const int out_components = a_scalar ? b.components() : a.components();
    SpectralField out(a.lattice(), out_components);

    std::vector<Complex> ga, gb;
    if (a_scalar) ga = physical_component(a, 0, conj_a);
    if (b_scalar) gb = physical_component(b, 0, conj_b);

    std::vector<Complex> prod(a.lattice().grid_count());
    for (int c = 0; c < out_components; ++c) {
        const std::vector<Complex>& fa = a_scalar ? ga : (ga = physical_component(a, c, conj_a));
        const std::vector<Complex>& fb = b_scalar ? gb : (gb = physical_component(b, c, conj_b));
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fa[i] * fb[i];
        from_physical(prod, out, c);
    }
    return out;
}

SpectralField dot_product(const SpectralField& a, const SpectralField& b,
                          bool conj_a, bool conj_b) {
    check_lattices(a, b);
    if (a.components() != b.components())
        throw std::invalid_argument("dot product needs matching component counts");

    SpectralField out(a.lattice(), 1);
    std::vector<Complex> acc(a.lattice().grid_count(), Complex(0.0, 0.0));
    for (int c = 0; c < a.components(); ++c) {
        std::vector<Complex> fa = physical_component(a, c, conj_a);
        std::vector<Complex> fb = physical_component(b, c, conj_b);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += fa[i] * fb[i];
    }
    from_physical(acc, out, 0);
    return out;
}

} // namespace qdnls

#include <algorithm>

#include "fracx/errors.hpp"
#include "fracx/relaxations.hpp"

namespace fracx {

LiftedIndex LiftedIndex::canonical(bool binary_diag) const {
    LiftedIndex c = *this;
    switch (kind) {
        case Kind::W:
            if (c.idx.size() != 2) throw InvalidArgument("W needs two indices");
            if (c.idx[0] > c.idx[1]) std::swap(c.idx[0], c.idx[1]);
            if (c.idx[0] == c.idx[1] && binary_diag) return y(ratio, c.idx[0]);
            return c;
        case Kind::wS:
        case Kind::uS:
            std::sort(c.idx.begin(), c.idx.end());
            c.idx.erase(std::unique(c.idx.begin(), c.idx.end()), c.idx.end());
            if (kind == Kind::wS && c.idx.empty()) return rho(ratio);
            if (kind == Kind::wS && c.idx.size() == 1) return y(ratio, c.idx[0]);
            if (kind == Kind::uS && c.idx.size() == 1) return x(c.idx[0]);
            if (kind == Kind::uS && c.idx.empty()) throw InvalidArgument("u of the empty set is the constant 1");
            return c;
        default: return c;
    }
}

std::string LiftedIndex::name(bool binary_diag) const {
    LiftedIndex c = canonical(binary_diag);
    std::string s;
    switch (c.kind) {
        case Kind::x: return "x_" + std::to_string(c.idx[0]);
        case Kind::rho: return "rho_" + std::to_string(c.ratio);
        case Kind::y: return "y_" + std::to_string(c.ratio) + "_" + std::to_string(c.idx[0]);
        case Kind::W: s = "W_" + std::to_string(c.ratio); break;
        case Kind::wS: s = "w_" + std::to_string(c.ratio); break;
        case Kind::uS: s = "u"; break;
    }
    for (int j : c.idx) s += "_" + std::to_string(j);
    return s;
}

int LiftedModel::W(int i, int j, int k) const {
    bool diag_alias = j == k && binary[j];
    auto c = model.find(LiftedIndex::W(i, j, k).name(diag_alias));
    return c ? *c : -1;
}

}  // namespace fracx

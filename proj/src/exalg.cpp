#include "g2fm/exalg.hpp"

#include <sstream>

namespace g2fm {

int permutation_sign(const std::vector<int>& idx) {
    int s = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) s = -s;
        }
    return s;
}

Mask mask_of(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) {
        if (i < 0 || i >= 32) throw std::out_of_range("index out of mask range");
        m |= Mask(1) << i;
    }
    return m;
}

std::vector<int> indices_of(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

std::vector<Mask> basis_masks(int dim, int k) {
    std::vector<Mask> out;
    if (k < 0 || k > dim) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(mask_of(idx));
        int i = k - 1;
        while (i >= 0 && idx[i] == dim - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Rational CoordFrame::total_covolume() const {
    Rational v(1);
    for (const auto& c : covolume) v *= c;
    return v;
}

Rational CoordFrame::covolume_of(Mask m) const {
    Rational v(1);
    for (int i : indices_of(m)) v *= covolume.at(i);
    return v;
}

int CoordFrame::index_of(const std::string& label) const {
    for (int i = 0; i < dim; ++i)
        if (labels[i] == label) return i;
    throw std::invalid_argument("unknown coordinate label: " + label);
}

FramePtr make_frame(std::string name, std::vector<std::string> labels, std::vector<int> orientation,
                    std::vector<Rational> covolume) {
    auto f = std::make_shared<CoordFrame>();
    f->name = std::move(name);
    f->dim = static_cast<int>(labels.size());
    if (f->dim > 31) throw std::invalid_argument("frame too large");
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw std::invalid_argument("duplicate coordinate label " + labels[i]);
    f->labels = std::move(labels);
    if (orientation.empty())
        for (int i = 0; i < f->dim; ++i) orientation.push_back(i);
    if (static_cast<int>(orientation.size()) != f->dim || permutation_sign(orientation) == 0)
        throw std::invalid_argument("orientation is not a permutation");
    for (int i : orientation)
        if (i < 0 || i >= f->dim) throw std::invalid_argument("orientation index out of range");
    f->orientation = std::move(orientation);
    if (covolume.empty()) covolume.assign(f->dim, Rational(1));
    if (static_cast<int>(covolume.size()) != f->dim) throw std::invalid_argument("covolume length");
    for (const auto& c : covolume)
        if (c <= 0) throw std::invalid_argument("covolume must be positive");
    f->covolume = std::move(covolume);
    return f;
}

std::string describe(const Form& f) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        if (m) {
            os << " d";
            bool sep = false;
            for (int i : indices_of(m)) {
                if (sep) os << '^';
                os << f.frame()->labels[i];
                sep = true;
            }
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace g2fm

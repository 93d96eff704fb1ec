#pragma once

#include <initializer_list>
#include <vector>

#include "tlab/thompson.hpp"

namespace tsupport {

inline tlab::NormalForm nf(std::vector<tlab::Index> pos, std::vector<tlab::Index> neg = {}) {
    return tlab::NormalForm::from_parts(std::move(pos), std::move(neg));
}

inline tlab::NormalForm x(tlab::Index i) { return tlab::NormalForm::generator(i); }
inline tlab::NormalForm xi(tlab::Index i) { return tlab::NormalForm::generator_inverse(i); }

inline tlab::NormalForm word(std::initializer_list<tlab::Atom> atoms) {
    const tlab::Word w(atoms);
    return tlab::normalize(w);
}

}  // namespace tsupport

#ifndef VGSMILE_ACCURACY_HPP
#define VGSMILE_ACCURACY_HPP

#include "vgsmile/errors.hpp"

namespace vgsmile {

// Accuracy targets shared by the iterative primitives. Pricing identities are
// tested at 1e-8 to 1e-10, so the primitives default two digits tighter.
struct Accuracy {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    int max_iter = 200;

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0) || max_iter < 1)
            throw DomainError("Accuracy requires rel_tol > 0, abs_tol > 0, max_iter >= 1");
    }
};

} // namespace vgsmile

#endif

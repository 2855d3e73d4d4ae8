#pragma once

#include "maxrep/symplectic.hpp"

namespace maxrep {

class Triple {
public:
    // checks pairwise transversality
    Triple(BoundaryPoint p1, BoundaryPoint p2, BoundaryPoint p3, const Tolerance& tol = {});

    const BoundaryPoint& p1() const { return p_[0]; }
    const BoundaryPoint& p2() const { return p_[1]; }
    const BoundaryPoint& p3() const { return p_[2]; }
    const BoundaryPoint& operator[](int i) const { return p_[i]; }

private:
    BoundaryPoint p_[3];
};

SpMat normalize_pair(const BoundaryPoint& p1, const BoundaryPoint& p3, const Tolerance& tol = {});
int maslov(const Triple& t, const Tolerance& tol = {});
int maslov(const BoundaryPoint& p1, const BoundaryPoint& p2, const BoundaryPoint& p3, const Tolerance& tol = {});
bool is_maximal(const Triple& t, const Tolerance& tol = {});
SpMat normalize_maximal_triple(const Triple& t, const Tolerance& tol = {});

}  // namespace maxrep

#pragma once

#include "geoflow/field.hpp"

namespace geoflow {

VectorField3 cross(const VectorField3& a, const VectorField3& b);
ScalarField dot(const VectorField3& a, const VectorField3& b);
/// a . (b x c) per node.
ScalarField triple(const VectorField3& a, const VectorField3& b, const VectorField3& c);
ScalarField norms(const VectorField3& a);

/// Divides by the pointwise norm. Throws DegenerateVector when a norm is below 1e-13.
VectorField3 normalize(const VectorField3& a);

/// max over nodes of ||a| - 1|.
double unit_defect(const VectorField3& a);

/// Removes the component along the unit field s: v - (v.s) s.
VectorField3 tangent_part(const VectorField3& v, const VectorField3& s);

}  // namespace geoflow

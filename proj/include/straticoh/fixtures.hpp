#pragma once

#include "straticoh/hi_theory.hpp"

namespace straticoh::fixtures {

// Elementary complexes
ComplexHandle circle(int vertices = 3);
ComplexHandle sphere2();        // boundary of the tetrahedron
ComplexHandle disc2();          // single triangle
ComplexHandle ball3();          // solid tetrahedron
ComplexHandle interval();       // single edge
ComplexHandle point();

// Products and twisted spaces
ProductComplex torus();             // circle(3) x circle(3)
ProductComplex solid_torus();       // disc2 x circle(3)
ProductComplex torus_cylinder();    // torus x interval
ProductComplex ball3_times_circle();
MappingTorus klein_bottle();        // reflection mapping torus of circle(6)

SimplicialMap circle_rotation(int vertices);    // v -> v+1 mod k
SimplicialMap circle_reflection(int vertices);  // v -> (k - v) mod k
// the same automorphisms on an existing standard-circle handle
SimplicialMap rotation_on(ComplexHandle circle_complex);
SimplicialMap reflection_on(ComplexHandle circle_complex);

// Flat bundle systems
FlatBundleSystem trivial_torus_system();          // circle(3) base, circle(3) fiber
FlatBundleSystem klein_system();                  // circle(3) base, circle(6) fiber, reflection
FlatBundleSystem trivial_sphere_system();         // circle(3) base, sphere2 fiber
FlatBundleSystem point_fiber_system();            // circle(3) base, point fiber
FlatBundleSystem simplex_base_system(int base_dim, ComplexHandle fiber,
                                     bool twist_first_edge = false);

// Isolated-singularity spaces
IsolatedSingularitySpace cone_on_sphere_space();   // M = D^3, link S^2 (X = S^3)
IsolatedSingularitySpace coned_solid_torus_space();// M = solid torus, link T^2
IsolatedSingularitySpace suspension_of_torus_space();  // M = T^2 x I, two T^2 links

// Depth-1 spaces
DepthOneSpace sphere_times_circle_space();  // M = solid torus, trivial circle bundle boundary
DepthOneSpace ball_times_circle_space();    // M = D^3 x S^1, trivial S^2 bundle boundary
DepthOneSpace disc_point_fiber_space();     // M = D^2, point fiber over the boundary circle

}  // namespace straticoh::fixtures

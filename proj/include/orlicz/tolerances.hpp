#pragma once

namespace orlicz {

// Fixed numeric tolerances used across the toolkit. All solvers and checks
// read their defaults from a single instance so that a report's tolerance
// budget is reproducible from one record.
struct Tolerances {
    double solver_rel = 1e-12;        // scalar gauge-sum / inverse bisection
    int solver_max_iter = 200;
    double body_solver_rel = 1e-10;   // outer Luxemburg solves (moment/projection)
    double quadrature_rel = 1e-6;     // successive-refinement stopping
    int quadrature_max_refine = 6;
    double law_tol = 1e-7;            // default law-check tolerance
    double vertex_dedup = 1e-10;      // absolute, Euclidean
    double facet_origin = 1e-12;      // |offset| below this marks an origin facet
    double working_range = 1152921504606846976.0;  // 2^60 bracket-expansion cap

    static const Tolerances& defaults() {
        static const Tolerances t{};
        return t;
    }
};

}  // namespace orlicz

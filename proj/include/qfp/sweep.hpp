// Parameter-sweep engine: evaluates transport observables over a 1D or 2D
// grid, fans the independent grid points out to a worker pool, and emits
// deterministic CSV.

#pragma once

#include "qfp/transport.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qfp {

enum class SweepParam { PInc, Length, Dw1, Dw2, Gamma1, Gamma2 };

const char* to_string(SweepParam p);
SweepParam sweep_param_from_string(const std::string& name);

struct SweepAxis {
    SweepParam param = SweepParam::PInc;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    bool log_spacing = false;

    void validate() const;
    double value_at(int i) const;
};

struct SweepOutputs {
    bool transmit = true;
    bool rectify = true;
    bool profile_average = false;
    bool p1 = true;
    bool p2 = true;
};

struct FixedParams {
    double p_inc = 0.001;
    double length = 0.5;
    double dw1 = 0.0;
    double dw2 = 0.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
};

struct SweepSpec {
    std::vector<SweepAxis> axes; // 1 or 2, row-major in declaration order
    FixedParams fixed;
    SolverSettings solver;
    SweepOutputs outputs;
    int workers = 0; // 0 = hardware concurrency

    void validate() const;
};

// One row per grid point. Fields that were not requested, or whose solve
// did not converge, are left empty.
struct SweepRecord {
    double p_inc = 0.0, length = 0.0, dw1 = 0.0, dw2 = 0.0;
    double gamma1 = 1.0, gamma2 = 1.0;
    std::optional<double> p1, p2, R1, R2;
    std::optional<double> t12, t21, r_factor, l_factor;
    std::optional<double> avg_intracavity;
    bool converged_12 = false;
    bool converged_21 = false;
    std::int64_t iterations = 0;
    double residual = 0.0;
};

inline constexpr const char* kCsvHeader =
    "p_inc,L,dw1,dw2,gamma1,gamma2,p1,p2,R1,R2,T12,T21,r_factor,l_factor,"
    "avg_intracavity,converged_12,converged_21,iterations,residual";

// Shortest round-trip decimal representation (<= 17 significant digits).
std::string format_double(double v);

// Evaluates every grid point; output ordering is row-major over the axes
// as declared regardless of the worker count.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

std::string to_csv_row(const SweepRecord& r);
SweepRecord record_from_csv_row(const std::string& line);
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(std::istream& is);

struct DesignSearchResult {
    double length = 0.0;
    double dw1 = 0.0;
    double r_factor = 0.0;
    double l_factor = 0.0;
    bool found = false; // false when no grid point converged
};

struct DesignBounds {
    double length_min = 0.0;
    double length_max = 0.06;
    double dw1_min = -0.5;
    double dw1_max = 0.5;
};

// Coarse 65x65 scan of min(r_factor, l_factor) over the bounds followed by
// three 4x grid-shrink refinement rounds around the running best.
DesignSearchResult design_search(double p_inc, double dw2,
                                 const DesignBounds& bounds,
                                 const SolverSettings& s);

} // namespace qfp

#include "qfp/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace qfp {

const char* to_string(SweepParam p) {
    switch (p) {
    case SweepParam::PInc: return "p_inc";
    case SweepParam::Length: return "L";
    case SweepParam::Dw1: return "dw1";
    case SweepParam::Dw2: return "dw2";
    case SweepParam::Gamma1: return "gamma1";
    case SweepParam::Gamma2: return "gamma2";
    }
    return "?";
}

SweepParam sweep_param_from_string(const std::string& name) {
    if (name == "p_inc") return SweepParam::PInc;
    if (name == "L" || name == "length") return SweepParam::Length;
    if (name == "dw1") return SweepParam::Dw1;
    if (name == "dw2") return SweepParam::Dw2;
    if (name == "gamma1") return SweepParam::Gamma1;
    if (name == "gamma2") return SweepParam::Gamma2;
    throw InvalidParameterError("unknown sweep parameter: " + name);
}

void SweepAxis::validate() const {
    if (count < 2)
        throw InvalidParameterError("axis count must be >= 2");
    if (!(min <= max))
        throw InvalidParameterError("axis min must be <= max");
    if (log_spacing && !(min > 0.0))
        throw InvalidParameterError("log spacing requires min > 0");
}

double SweepAxis::value_at(int i) const {
    const double t = double(i) / double(count - 1);
    if (log_spacing)
        return min * std::pow(max / min, t);
    return min + (max - min) * t;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2)
        throw InvalidParameterError("a sweep takes 1 or 2 axes");
    for (const auto& a : axes)
        a.validate();
    solver.validate();
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

void apply(FixedParams& f, SweepParam p, double v) {
    switch (p) {
    case SweepParam::PInc: f.p_inc = v; break;
    case SweepParam::Length: f.length = v; break;
    case SweepParam::Dw1: f.dw1 = v; break;
    case SweepParam::Dw2: f.dw2 = v; break;
    case SweepParam::Gamma1: f.gamma1 = v; break;
    case SweepParam::Gamma2: f.gamma2 = v; break;
    }
}

DeviceConfig device_from(const FixedParams& f) {
    DeviceConfig dev;
    dev.emitter1 = EmitterParams{f.gamma1, f.dw1};
    dev.emitter2 = EmitterParams{f.gamma2, f.dw2};
    dev.geometry = CavityGeometry{f.length};
    return dev;
}

SweepRecord evaluate_point(const FixedParams& f, const SolverSettings& s,
                           const SweepOutputs& out) {
    SweepRecord rec;
    rec.p_inc = f.p_inc;
    rec.length = f.length;
    rec.dw1 = f.dw1;
    rec.dw2 = f.dw2;
    rec.gamma1 = f.gamma1;
    rec.gamma2 = f.gamma2;

    const DeviceConfig dev = device_from(f);
    const SteadyStateSolution fwd = solve_auto(f.p_inc, dev, s);
    const SteadyStateSolution bwd = solve_auto(f.p_inc, dev.swapped(), s);

    rec.converged_12 = fwd.converged;
    rec.converged_21 = bwd.converged;
    rec.iterations = fwd.iterations + bwd.iterations;
    rec.residual = std::max(fwd.residual, bwd.residual);

    if (fwd.converged) {
        if (out.p1) rec.p1 = fwd.p1;
        if (out.p2) rec.p2 = fwd.p2;
        rec.R1 = fwd.R1;
        rec.R2 = fwd.R2;
        if (out.transmit || out.rectify) rec.t12 = fwd.transmittance;
    }
    if (bwd.converged && out.rectify)
        rec.t21 = bwd.transmittance;
    if (fwd.converged && bwd.converged && out.rectify) {
        const double sum = fwd.transmittance + bwd.transmittance;
        const double r = (sum > 0.0)
                             ? std::abs(fwd.transmittance - bwd.transmittance) / sum
                             : 0.0;
        rec.r_factor = r;
        rec.l_factor = fwd.transmittance * r;
    }
    if (fwd.converged && out.profile_average) {
        try {
            const IntensityProfile prof = intracavity_profile(f.p_inc, dev, 2, s);
            rec.avg_intracavity = prof.average;
        } catch (const SingularityError&) {
            // singular-limit point; leave the field empty
        }
    }
    return rec;
}

void append_opt(std::string& row, const std::optional<double>& v) {
    row.push_back(',');
    if (v)
        row += format_double(*v);
}

} // namespace

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
    spec.validate();

    const int n0 = spec.axes[0].count;
    const int n1 = (spec.axes.size() == 2) ? spec.axes[1].count : 1;
    const std::size_t total = std::size_t(n0) * std::size_t(n1);

    std::vector<SweepRecord> records(total);
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total)
                return;
            FixedParams f = spec.fixed;
            const int i = static_cast<int>(idx / n1);
            apply(f, spec.axes[0].param, spec.axes[0].value_at(i));
            if (spec.axes.size() == 2) {
                const int j = static_cast<int>(idx % n1);
                apply(f, spec.axes[1].param, spec.axes[1].value_at(j));
            }
            records[idx] = evaluate_point(f, spec.solver, spec.outputs);
        }
    };

    unsigned n_workers = spec.workers > 0
                             ? unsigned(spec.workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, total);
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned k = 0; k < n_workers; ++k)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    return records;
}

std::string to_csv_row(const SweepRecord& r) {
    std::string row = format_double(r.p_inc);
    row += ',';
    row += format_double(r.length);
    row += ',';
    row += format_double(r.dw1);
    row += ',';
    row += format_double(r.dw2);
    row += ',';
    row += format_double(r.gamma1);
    row += ',';
    row += format_double(r.gamma2);
    append_opt(row, r.p1);
    append_opt(row, r.p2);
    append_opt(row, r.R1);
    append_opt(row, r.R2);
    append_opt(row, r.t12);
    append_opt(row, r.t21);
    append_opt(row, r.r_factor);
    append_opt(row, r.l_factor);
    append_opt(row, r.avg_intracavity);
    row += r.converged_12 ? ",1" : ",0";
    row += r.converged_21 ? ",1" : ",0";
    row += ',';
    row += std::to_string(r.iterations);
    row += ',';
    row += format_double(r.residual);
    return row;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw InvalidParameterError("bad numeric field: '" + s + "'");
    return v;
}

std::optional<double> parse_opt(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    return parse_double(s);
}

} // namespace

SweepRecord record_from_csv_row(const std::string& line) {
    const auto f = split_csv(line);
    if (f.size() != 19)
        throw InvalidParameterError("CSV row has wrong number of fields");
    SweepRecord r;
    r.p_inc = parse_double(f[0]);
    r.length = parse_double(f[1]);
    r.dw1 = parse_double(f[2]);
    r.dw2 = parse_double(f[3]);
    r.gamma1 = parse_double(f[4]);
    r.gamma2 = parse_double(f[5]);
    r.p1 = parse_opt(f[6]);
    r.p2 = parse_opt(f[7]);
    r.R1 = parse_opt(f[8]);
    r.R2 = parse_opt(f[9]);
    r.t12 = parse_opt(f[10]);
    r.t21 = parse_opt(f[11]);
    r.r_factor = parse_opt(f[12]);
    r.l_factor = parse_opt(f[13]);
    r.avg_intracavity = parse_opt(f[14]);
    r.converged_12 = f[15] == "1";
    r.converged_21 = f[16] == "1";
    r.iterations = std::stoll(f[17]);
    r.residual = parse_double(f[18]);
    return r;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records)
        os << to_csv_row(r) << '\n';
}

std::vector<SweepRecord> read_csv(std::istream& is) {
    std::vector<SweepRecord> records;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (first) {
            first = false;
            if (line == kCsvHeader)
                continue;
        }
        records.push_back(record_from_csv_row(line));
    }
    return records;
}

namespace {

struct SearchCell {
    double score = -1.0;
    double length = 0.0;
    double dw1 = 0.0;
    double r = 0.0;
    double l = 0.0;
    bool valid = false;
};

SearchCell scan_rect_grid(double p_inc, double dw2, double l_lo, double l_hi,
                          double w_lo, double w_hi, int n,
                          const SolverSettings& s) {
    SweepSpec spec;
    spec.axes = {SweepAxis{SweepParam::Length, l_lo, l_hi, n, false},
                 SweepAxis{SweepParam::Dw1, w_lo, w_hi, n, false}};
    spec.fixed.p_inc = p_inc;
    spec.fixed.dw2 = dw2;
    spec.solver = s;
    spec.outputs = SweepOutputs{true, true, false, false, false};
    const auto records = run_sweep(spec);

    SearchCell best;
    for (const auto& r : records) {
        if (!r.r_factor || !r.l_factor)
            continue;
        const double score = std::min(*r.r_factor, *r.l_factor);
        if (!best.valid || score > best.score) {
            best = SearchCell{score, r.length, r.dw1, *r.r_factor, *r.l_factor, true};
        }
    }
    return best;
}

} // namespace

DesignSearchResult design_search(double p_inc, double dw2,
                                 const DesignBounds& bounds,
                                 const SolverSettings& s) {
    if (!(bounds.length_min <= bounds.length_max) ||
        !(bounds.dw1_min <= bounds.dw1_max))
        throw InvalidParameterError("design_search bounds are inverted");

    double l_lo = bounds.length_min, l_hi = bounds.length_max;
    double w_lo = bounds.dw1_min, w_hi = bounds.dw1_max;

    SearchCell best = scan_rect_grid(p_inc, dw2, l_lo, l_hi, w_lo, w_hi, 65, s);
    for (int round = 0; round < 3 && best.valid; ++round) {
        const double l_span = std::max(l_hi - l_lo, 0.0) / 4.0;
        const double w_span = std::max(w_hi - w_lo, 0.0) / 4.0;
        l_lo = std::max(bounds.length_min, best.length - 0.5 * l_span);
        l_hi = std::min(bounds.length_max, best.length + 0.5 * l_span);
        w_lo = std::max(bounds.dw1_min, best.dw1 - 0.5 * w_span);
        w_hi = std::min(bounds.dw1_max, best.dw1 + 0.5 * w_span);
        const SearchCell cand =
            scan_rect_grid(p_inc, dw2, l_lo, l_hi, w_lo, w_hi, 17, s);
        if (cand.valid && cand.score > best.score)
            best = cand;
    }

    DesignSearchResult res;
    res.found = best.valid;
    res.length = best.length;
    res.dw1 = best.dw1;
    res.r_factor = best.r;
    res.l_factor = best.l;
    return res;
}

} // namespace qfp

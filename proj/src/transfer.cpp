#include "tbai/transfer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace tbai {

// ---------------------------------------------------------------------------
// RealSet
// ---------------------------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool piece_nonempty(const RealSet::Piece& p) {
    if (p.lo < p.hi) return true;
    return p.lo == p.hi && p.lo_closed && p.hi_closed && std::isfinite(p.lo);
}

// Union of a and b is a single interval (overlap or touching endpoints).
bool mergeable(const RealSet::Piece& a, const RealSet::Piece& b) {
    // a.lo <= b.lo assumed
    if (b.lo < a.hi) return true;
    if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
    return false;
}

} // namespace

RealSet::RealSet(std::vector<Piece> pieces) {
    for (auto& p : pieces) {
        if (std::isnan(p.lo) || std::isnan(p.hi)) throw std::invalid_argument("RealSet: NaN endpoint");
        if (p.lo == -kInf) p.lo_closed = false;
        if (p.hi == kInf) p.hi_closed = false;
        if (p.hi < p.lo) throw std::invalid_argument("RealSet: piece with hi < lo");
        if (!piece_nonempty(p)) throw std::invalid_argument("RealSet: empty piece");
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    for (const auto& p : pieces) {
        if (pieces_.empty() || !mergeable(pieces_.back(), p)) {
            pieces_.push_back(p);
            continue;
        }
        Piece& last = pieces_.back();
        if (p.hi > last.hi) {
            last.hi = p.hi;
            last.hi_closed = p.hi_closed;
        } else if (p.hi == last.hi) {
            last.hi_closed = last.hi_closed || p.hi_closed;
        }
    }
}

RealSet RealSet::whole_line() { return RealSet({Piece{-kInf, kInf, false, false}}); }
RealSet RealSet::open_interval(double lo, double hi) { return RealSet({Piece{lo, hi, false, false}}); }
RealSet RealSet::closed_interval(double lo, double hi) { return RealSet({Piece{lo, hi, true, true}}); }

bool RealSet::is_whole_line() const {
    return pieces_.size() == 1 && pieces_[0].lo == -kInf && pieces_[0].hi == kInf;
}

bool RealSet::contains(double x) const {
    for (const auto& p : pieces_) {
        bool above_lo = x > p.lo || (x == p.lo && p.lo_closed);
        bool below_hi = x < p.hi || (x == p.hi && p.hi_closed);
        if (above_lo && below_hi) return true;
        if (p.lo > x) break;
    }
    return false;
}

bool RealSet::contains_interval(double lo, double hi) const {
    // Pieces are separated after canonicalization, so a connected interval
    // fits iff it fits inside one piece.
    for (const auto& p : pieces_) {
        bool lo_in = lo > p.lo || (lo == p.lo && p.lo_closed);
        bool hi_in = hi < p.hi || (hi == p.hi && p.hi_closed);
        if (lo_in && hi_in) return true;
    }
    return false;
}

bool RealSet::intersects_interval(double lo, double hi) const {
    for (const auto& p : pieces_) {
        bool p_starts_below = p.lo < hi || (p.lo == hi && p.lo_closed);
        bool p_ends_above = p.hi > lo || (p.hi == lo && p.hi_closed);
        if (p_starts_below && p_ends_above) return true;
    }
    return false;
}

ExtReal RealSet::boundary_distance(double mu) const {
    if (contains(mu)) {
        if (is_whole_line()) return ExtReal::infinity();
        for (const auto& p : pieces_) {
            bool above_lo = mu > p.lo || (mu == p.lo && p.lo_closed);
            bool below_hi = mu < p.hi || (mu == p.hi && p.hi_closed);
            if (above_lo && below_hi) {
                double d_lo = std::isfinite(p.lo) ? mu - p.lo : kInf;
                double d_hi = std::isfinite(p.hi) ? p.hi - mu : kInf;
                double d = std::min(d_lo, d_hi);
                return std::isfinite(d) ? ExtReal(d) : ExtReal::infinity();
            }
        }
        return ExtReal(0.0); // unreachable
    }
    if (pieces_.empty()) return ExtReal::infinity();
    double best = kInf;
    for (const auto& p : pieces_) {
        double d;
        if (mu < p.lo) d = p.lo - mu;
        else if (mu > p.hi) d = mu - p.hi;
        else d = 0.0; // mu at an open endpoint
        best = std::min(best, d);
    }
    return std::isfinite(best) ? ExtReal(best) : ExtReal::infinity();
}

bool RealSet::symmetric_window_on_side(double mu, double r) const {
    if (contains(mu)) return contains_interval(mu - r, mu + r);
    return !intersects_interval(mu - r, mu + r);
}

std::string RealSet::to_string() const {
    if (pieces_.empty()) return "{}";
    std::string out;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const auto& p = pieces_[k];
        if (k) out += "u";
        out += p.lo_closed ? '[' : '(';
        out += tbai::to_string(p.lo == -kInf ? ExtReal::neg_infinity() : ExtReal(p.lo));
        out += ',';
        out += tbai::to_string(p.hi == kInf ? ExtReal::infinity() : ExtReal(p.hi));
        out += p.hi_closed ? ']' : ')';
    }
    return out;
}

RealSet RealSet::parse(std::string_view text) {
    std::vector<Piece> pieces;
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    skip_ws();
    if (pos < text.size() && text.compare(pos, 2, "{}") == 0) {
        pos += 2;
        skip_ws();
        if (pos != text.size()) throw std::invalid_argument("RealSet parse: trailing text");
        return RealSet();
    }
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) break;
        char open = text[pos];
        if (open != '(' && open != '[') throw std::invalid_argument("RealSet parse: expected '(' or '['");
        ++pos;
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) throw std::invalid_argument("RealSet parse: missing ','");
        std::size_t close = text.find_first_of(")]", comma);
        if (close == std::string_view::npos) throw std::invalid_argument("RealSet parse: missing ')' or ']'");
        auto trim = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        ExtReal lo = parse_ext_real(trim(text.substr(pos, comma - pos)));
        ExtReal hi = parse_ext_real(trim(text.substr(comma + 1, close - comma - 1)));
        pieces.push_back(Piece{lo.raw(), hi.raw(), open == '[', text[close] == ']'});
        pos = close + 1;
        skip_ws();
        if (pos < text.size()) {
            if (text[pos] != 'u' && text[pos] != 'U') throw std::invalid_argument("RealSet parse: expected 'u' between pieces");
            ++pos;
        }
    }
    return RealSet(std::move(pieces));
}

// ---------------------------------------------------------------------------
// ComponentFunction
// ---------------------------------------------------------------------------

ComponentFunction::ComponentFunction(PiecewiseMonotoneComponent p) : impl_(std::move(p)) {
    const auto& pw = std::get<PiecewiseMonotoneComponent>(impl_);
    if (pw.pieces.size() != pw.breakpoints.size() + 1) {
        throw std::invalid_argument("PiecewiseMonotoneComponent: need breakpoints+1 pieces");
    }
    for (std::size_t k = 1; k < pw.breakpoints.size(); ++k) {
        if (!(pw.breakpoints[k - 1] < pw.breakpoints[k])) {
            throw std::invalid_argument("PiecewiseMonotoneComponent: breakpoints must increase");
        }
    }
    for (const auto& f : pw.pieces) {
        if (!f) throw std::invalid_argument("PiecewiseMonotoneComponent: null piece");
    }
}

ComponentFunction ComponentFunction::piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("piecewise_linear: need matching xs/ys with >= 2 knots");
    }
    PiecewiseMonotoneComponent pw;
    pw.breakpoints = xs;
    pw.pieces.push_back([y = ys.front()](double) { return y; });
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        double x0 = xs[k], x1 = xs[k + 1], y0 = ys[k], y1 = ys[k + 1];
        double slope = (y1 - y0) / (x1 - x0);
        pw.pieces.push_back([x0, y0, slope](double x) { return y0 + slope * (x - x0); });
    }
    pw.pieces.push_back([y = ys.back()](double) { return y; });
    return ComponentFunction(std::move(pw));
}

namespace {

double eval_piece(const std::function<double(double)>& f, double x) {
    double v = f(x);
    if (std::isnan(v)) throw std::invalid_argument("piecewise component returned NaN");
    return v;
}

std::size_t piece_index(const PiecewiseMonotoneComponent& pw, double x) {
    // Piece j owns [b_{j-1}, b_j).
    return static_cast<std::size_t>(
        std::upper_bound(pw.breakpoints.begin(), pw.breakpoints.end(), x) - pw.breakpoints.begin());
}

} // namespace

ExtReal ComponentFunction::evaluate(double x) const {
    if (std::isnan(x)) throw std::invalid_argument("ComponentFunction: NaN input");
    if (is_zero_kind()) return ExtReal(0.0);
    if (const auto* lin = as_linear()) return ExtReal(lin->coeff * x);
    if (const auto* ind = as_indicator()) {
        return ind->set.contains(x) ? ExtReal(1.0) : ExtReal::neg_infinity();
    }
    const auto& pw = *as_piecewise();
    return ExtReal(eval_piece(pw.pieces[piece_index(pw, x)], x));
}

ExtInterval ComponentFunction::image(double lo, double hi) const {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi) {
        throw std::invalid_argument("ComponentFunction::image: need finite lo <= hi");
    }
    if (is_zero_kind()) return ExtInterval(0.0, 0.0);
    if (const auto* lin = as_linear()) {
        double a = lin->coeff * lo, b = lin->coeff * hi;
        return a <= b ? ExtInterval(a, b) : ExtInterval(b, a);
    }
    if (const auto* ind = as_indicator()) {
        bool inside = ind->set.contains_interval(lo, hi);
        bool meets = ind->set.intersects_interval(lo, hi);
        ExtReal mn = inside ? ExtReal(1.0) : ExtReal::neg_infinity();
        ExtReal mx = meets ? ExtReal(1.0) : ExtReal::neg_infinity();
        return ExtInterval(mn, mx);
    }
    const auto& pw = *as_piecewise();
    // Each piece is monotone on the closure of its cell, so clipped endpoint
    // evaluations give the exact inf/sup.
    double mn = kInf, mx = -kInf;
    const std::size_t n_pieces = pw.pieces.size();
    for (std::size_t j = 0; j < n_pieces; ++j) {
        double cell_lo = (j == 0) ? -kInf : pw.breakpoints[j - 1];
        double cell_hi = (j + 1 == n_pieces) ? kInf : pw.breakpoints[j];
        double a = std::max(lo, cell_lo);
        double b = std::min(hi, cell_hi);
        if (a > b) continue;
        double va = eval_piece(pw.pieces[j], a);
        double vb = eval_piece(pw.pieces[j], b);
        mn = std::min({mn, va, vb});
        mx = std::max({mx, va, vb});
    }
    return ExtInterval(mn, mx);
}

ExtInterval ComponentFunction::global_image() const {
    if (is_zero_kind()) return ExtInterval(0.0, 0.0);
    if (const auto* lin = as_linear()) {
        if (lin->coeff == 0.0) return ExtInterval(0.0, 0.0);
        return ExtInterval(ExtReal::neg_infinity(), ExtReal::infinity());
    }
    if (const auto* ind = as_indicator()) {
        if (ind->set.empty()) return ExtInterval(ExtReal::neg_infinity(), ExtReal::neg_infinity());
        if (ind->set.is_whole_line()) return ExtInterval(1.0, 1.0);
        return ExtInterval(ExtReal::neg_infinity(), ExtReal(1.0));
    }
    return ExtInterval(ExtReal::neg_infinity(), ExtReal::infinity());
}

bool ComponentFunction::is_constant() const {
    if (is_zero_kind()) return true;
    if (const auto* lin = as_linear()) return lin->coeff == 0.0;
    if (const auto* ind = as_indicator()) return ind->set.empty() || ind->set.is_whole_line();
    return false; // piecewise treated as non-constant; it is the escape hatch
}

ExtInterval component_interval_image(const ComponentFunction& f, const ExtInterval& ci) {
    if (!ci.finite()) {
        throw std::invalid_argument("component_interval_image: interval must be finite");
    }
    return f.image(ci.lo.raw(), ci.hi.raw());
}

// ---------------------------------------------------------------------------
// TransferFunction
// ---------------------------------------------------------------------------

TransferFunction::TransferFunction(int n_target, int n_source, std::vector<ComponentFunction> grid,
                                   std::vector<std::string> target_labels)
    : n_target_(n_target), n_source_(n_source), grid_(std::move(grid)), labels_(std::move(target_labels)) {
    if (n_target_ < 1 || n_source_ < 1) throw std::invalid_argument("TransferFunction: empty instance");
    if (grid_.size() != static_cast<std::size_t>(n_target_) * static_cast<std::size_t>(n_source_)) {
        throw std::invalid_argument("TransferFunction: grid size mismatch");
    }
    if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n_target_)) {
        throw std::invalid_argument("TransferFunction: label count mismatch");
    }
    sparsity_.resize(n_target_);
    for (int a = 0; a < n_target_; ++a) {
        int s = 0;
        for (int i = 0; i < n_source_; ++i) {
            if (!component(a, i).is_constant()) ++s;
        }
        sparsity_[a] = s;
    }
}

const ComponentFunction& TransferFunction::component(int target, int source) const {
    if (target < 0 || target >= n_target_ || source < 0 || source >= n_source_) {
        throw std::out_of_range("TransferFunction::component: index out of range");
    }
    return grid_[static_cast<std::size_t>(target) * n_source_ + source];
}

int TransferFunction::sparsity(int target) const {
    if (target < 0 || target >= n_target_) throw std::out_of_range("TransferFunction::sparsity");
    return sparsity_[target];
}

const std::string& TransferFunction::label(int target) const {
    static const std::string empty;
    if (labels_.empty()) return empty;
    return labels_.at(static_cast<std::size_t>(target));
}

ExtReal TransferFunction::evaluate_target(int target, std::span<const double> mu) const {
    if (mu.size() != static_cast<std::size_t>(n_source_)) {
        throw std::invalid_argument("evaluate_target: mu length mismatch");
    }
    ExtReal acc(0.0);
    for (int i = 0; i < n_source_; ++i) {
        acc = ext_add(acc, component(target, i).evaluate(mu[i]));
    }
    return acc;
}

std::vector<ExtReal> TransferFunction::true_target_means(std::span<const double> mu) const {
    std::vector<ExtReal> nu;
    nu.reserve(n_target_);
    for (int a = 0; a < n_target_; ++a) nu.push_back(evaluate_target(a, mu));
    return nu;
}

std::vector<ExtInterval> target_bounds(const TransferFunction& tf,
                                       std::span<const ExtInterval> source_cis) {
    if (source_cis.size() != static_cast<std::size_t>(tf.n_source())) {
        throw std::invalid_argument("target_bounds: source interval count mismatch");
    }
    std::vector<ExtInterval> out;
    out.reserve(tf.n_target());
    for (int a = 0; a < tf.n_target(); ++a) {
        double lo_sum = 0.0, hi_sum = 0.0;
        bool lo_neg_inf = false, hi_pos_inf = false, hi_neg_inf = false;
        for (int i = 0; i < tf.n_source(); ++i) {
            const auto& ci = source_cis[i];
            ExtInterval img = ci.finite() ? tf.component(a, i).image(ci.lo.raw(), ci.hi.raw())
                                          : tf.component(a, i).global_image();
            if (img.lo.is_neg_inf()) lo_neg_inf = true;
            else lo_sum += img.lo.raw();
            if (img.hi.is_pos_inf()) hi_pos_inf = true;
            else if (img.hi.is_neg_inf()) hi_neg_inf = true;
            else hi_sum += img.hi.raw();
        }
        ExtReal lcb = lo_neg_inf ? ExtReal::neg_infinity() : ExtReal(lo_sum);
        ExtReal ucb = hi_pos_inf ? ExtReal::infinity()
                                 : (hi_neg_inf ? ExtReal::neg_infinity() : ExtReal(hi_sum));
        out.emplace_back(lcb, ucb);
    }
    return out;
}

ExtReal uncertainty_length(const TransferFunction& tf, int target, int source,
                           const ExtInterval& ci) {
    const ComponentFunction& f = tf.component(target, source);
    ExtInterval img = ci.finite() ? f.image(ci.lo.raw(), ci.hi.raw()) : f.global_image();
    return interval_length(img);
}

} // namespace tbai

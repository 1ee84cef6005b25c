#include "ducba/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ducba/rng.hpp"

namespace ducba {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end && *end == '\0' && std::isfinite(out);
}

}  // namespace

bool Dataset::fully_categorical() const {
    for (const auto& a : schema)
        if (a.kind != AttrKind::categorical) return false;
    return true;
}

std::optional<size_t> Dataset::find_attr(const std::string& name) const {
    for (size_t i = 0; i < schema.size(); ++i)
        if (schema[i].name == name) return i;
    return std::nullopt;
}

std::vector<uint16_t> Dataset::record_codes(size_t row) const {
    std::vector<uint16_t> codes(schema.size());
    for (size_t a = 0; a < schema.size(); ++a) codes[a] = cat_cols[a][row];
    return codes;
}

Dataset Dataset::subset(const std::vector<uint32_t>& rows) const {
    Dataset out;
    out.schema = schema;
    out.class_domain = class_domain;
    out.numeric_cols.resize(schema.size());
    out.cat_cols.resize(schema.size());
    for (size_t a = 0; a < schema.size(); ++a) {
        if (!numeric_cols[a].empty()) {
            out.numeric_cols[a].reserve(rows.size());
            for (uint32_t r : rows) out.numeric_cols[a].push_back(numeric_cols[a][r]);
        }
        if (!cat_cols[a].empty()) {
            out.cat_cols[a].reserve(rows.size());
            for (uint32_t r : rows) out.cat_cols[a].push_back(cat_cols[a][r]);
        }
    }
    out.labels.reserve(rows.size());
    for (uint32_t r : rows) out.labels.push_back(labels[r]);
    return out;
}

Dataset Dataset::drop_attrs(const std::vector<size_t>& attr_indices) const {
    std::set<size_t> drop(attr_indices.begin(), attr_indices.end());
    Dataset out;
    out.class_domain = class_domain;
    out.labels = labels;
    for (size_t a = 0; a < schema.size(); ++a) {
        if (drop.count(a)) continue;
        out.schema.push_back(schema[a]);
        out.numeric_cols.push_back(numeric_cols[a]);
        out.cat_cols.push_back(cat_cols[a]);
    }
    return out;
}

std::vector<AttributeSchema> standard_schema() {
    auto num = [](const char* n) { return AttributeSchema{n, AttrKind::numeric, {}}; };
    auto cat = [](const char* n) { return AttributeSchema{n, AttrKind::categorical, {}}; };
    return {num("age"),     cat("sex"),   cat("cp"),      num("trestbps"),
            num("chol"),    cat("fbs"),   cat("restecg"), num("thalach"),
            cat("exang"),   num("oldpeak"), cat("slope"), cat("ca"),
            cat("thal")};
}

LoadResult load_csv(const std::string& path,
                    const std::vector<AttributeSchema>& schema,
                    const std::string& target_name) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    std::string header_line;
    if (!std::getline(in, header_line)) throw std::runtime_error("empty dataset file: " + path);
    if (!header_line.empty() && header_line.back() == '\r') header_line.pop_back();

    std::vector<std::string> header = split_csv_line(header_line);

    std::set<std::string> expected;
    for (const auto& a : schema) expected.insert(a.name);
    expected.insert(target_name);
    std::set<std::string> got(header.begin(), header.end());
    if (expected != got) {
        std::ostringstream msg;
        msg << "header mismatch; expected {";
        for (const auto& n : expected) msg << n << " ";
        msg << "} got {";
        for (const auto& n : got) msg << n << " ";
        msg << "}";
        throw std::runtime_error(msg.str());
    }

    // Column position of each schema attribute and the target.
    std::vector<size_t> attr_col(schema.size());
    size_t target_col = 0;
    for (size_t i = 0; i < schema.size(); ++i)
        attr_col[i] = static_cast<size_t>(std::find(header.begin(), header.end(), schema[i].name) - header.begin());
    target_col = static_cast<size_t>(std::find(header.begin(), header.end(), target_name) - header.begin());

    size_t n_attrs = schema.size();
    std::vector<std::vector<double>> numeric(n_attrs);
    std::vector<std::vector<std::string>> raw_cat(n_attrs);
    std::vector<std::string> raw_labels;
    size_t dropped = 0;

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) { ++dropped; continue; }

        bool ok = true;
        std::vector<double> nums(n_attrs, 0.0);
        std::vector<std::string> cats(n_attrs);
        for (size_t a = 0; a < n_attrs && ok; ++a) {
            const std::string& cell = cells[attr_col[a]];
            if (cell.empty()) { ok = false; break; }
            if (schema[a].kind == AttrKind::numeric) {
                if (!parse_double(cell, nums[a])) ok = false;
            } else {
                cats[a] = cell;
            }
        }
        if (ok && cells[target_col].empty()) ok = false;
        if (!ok) { ++dropped; continue; }

        for (size_t a = 0; a < n_attrs; ++a) {
            if (schema[a].kind == AttrKind::numeric) numeric[a].push_back(nums[a]);
            else raw_cat[a].push_back(std::move(cats[a]));
        }
        raw_labels.push_back(cells[target_col]);
    }

    if (raw_labels.empty()) throw std::runtime_error("no usable rows in " + path);

    Dataset ds;
    ds.schema = schema;
    ds.numeric_cols.resize(n_attrs);
    ds.cat_cols.resize(n_attrs);

    // Categorical domains are the sorted distinct observed values.
    for (size_t a = 0; a < n_attrs; ++a) {
        if (schema[a].kind == AttrKind::numeric) {
            ds.numeric_cols[a] = std::move(numeric[a]);
            continue;
        }
        std::set<std::string> values(raw_cat[a].begin(), raw_cat[a].end());
        ds.schema[a].domain.assign(values.begin(), values.end());
        std::map<std::string, uint16_t> code;
        for (size_t i = 0; i < ds.schema[a].domain.size(); ++i)
            code[ds.schema[a].domain[i]] = static_cast<uint16_t>(i);
        ds.cat_cols[a].reserve(raw_cat[a].size());
        for (const auto& v : raw_cat[a]) ds.cat_cols[a].push_back(code[v]);
    }

    std::set<std::string> classes(raw_labels.begin(), raw_labels.end());
    ds.class_domain.assign(classes.begin(), classes.end());
    std::map<std::string, uint16_t> class_code;
    for (size_t i = 0; i < ds.class_domain.size(); ++i)
        class_code[ds.class_domain[i]] = static_cast<uint16_t>(i);
    ds.labels.reserve(raw_labels.size());
    for (const auto& l : raw_labels) ds.labels.push_back(class_code[l]);

    return {std::move(ds), dropped};
}

namespace {

// Cut points for equal-frequency binning: cut i sits at the value whose rank
// is floor(i*n/k). Duplicate cut values (long runs of ties) collapse, and a
// cut equal to the column minimum is skipped since it would leave the bottom
// bin empty.
std::vector<double> quantile_cuts(std::vector<double> values, int bins) {
    if (bins < 2) throw std::runtime_error("quantile bin count must be >= 2");
    std::sort(values.begin(), values.end());
    std::vector<double> cuts;
    size_t n = values.size();
    for (int i = 1; i < bins; ++i) {
        double c = values[(static_cast<size_t>(i) * n) / bins];
        if (c > values.front() && (cuts.empty() || c > cuts.back())) cuts.push_back(c);
    }
    return cuts;
}

// Bin index: number of cuts <= v, i.e. v lands in [cut_{i-1}, cut_i).
size_t bin_of(double v, const std::vector<double>& cuts) {
    return static_cast<size_t>(std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin());
}

}  // namespace

Dataset discretize(const Dataset& ds, const DiscretizationPlan& plan) {
    Dataset out = ds;
    for (size_t a = 0; a < ds.schema.size(); ++a) {
        if (ds.schema[a].kind != AttrKind::numeric) continue;
        const std::string& name = ds.schema[a].name;
        const auto& col = ds.numeric_cols[a];

        std::vector<double> cuts;
        auto explicit_it = plan.explicit_cuts.find(name);
        bool has_range = false;
        double lo = 0, hi = 0;
        if (explicit_it != plan.explicit_cuts.end()) {
            cuts = explicit_it->second;
            std::sort(cuts.begin(), cuts.end());
            auto range_it = plan.value_ranges.find(name);
            if (range_it != plan.value_ranges.end()) {
                has_range = true;
                lo = range_it->second.first;
                hi = range_it->second.second;
            }
        } else {
            cuts = quantile_cuts(col, plan.default_bins);
        }

        size_t n_bins = cuts.size() + 1;
        if (n_bins < 2)
            throw std::runtime_error("column " + name + " collapses to a single bin");

        out.schema[a].kind = AttrKind::categorical;
        out.schema[a].domain.clear();
        for (size_t b = 0; b < n_bins; ++b) out.schema[a].domain.push_back("b" + std::to_string(b));

        out.cat_cols[a].clear();
        out.cat_cols[a].reserve(col.size());
        for (size_t r = 0; r < col.size(); ++r) {
            double v = col[r];
            if (has_range && (v < lo || v >= hi))
                throw std::runtime_error("value " + std::to_string(v) + " of column " + name +
                                         " outside all bins at row " + std::to_string(r));
            out.cat_cols[a].push_back(static_cast<uint16_t>(bin_of(v, cuts)));
        }
        out.numeric_cols[a].clear();
    }
    return out;
}

Dataset derive_thalach_ratio(const Dataset& ds) {
    auto thalach = ds.find_attr("thalach");
    auto age = ds.find_attr("age");
    if (!thalach || !age || ds.schema[*thalach].kind != AttrKind::numeric ||
        ds.schema[*age].kind != AttrKind::numeric)
        throw std::runtime_error("derive_thalach_ratio needs numeric thalach and age columns");

    std::vector<double> ratio;
    ratio.reserve(ds.n_records());
    for (size_t r = 0; r < ds.n_records(); ++r) {
        double a = ds.num_value(r, *age);
        if (a >= 220.0)
            throw std::runtime_error("age >= 220 at row " + std::to_string(r) +
                                     "; thalach_ratio denominator degenerate");
        ratio.push_back(ds.num_value(r, *thalach) / (220.0 - a));
    }

    Dataset out = ds.drop_attrs({*thalach});
    out.schema.push_back(AttributeSchema{"thalach_ratio", AttrKind::numeric, {}});
    out.numeric_cols.push_back(std::move(ratio));
    out.cat_cols.emplace_back();
    return out;
}

// ---------------------------------------------------------------------------
// Chi-square machinery. The p-value comes from the regularized upper
// incomplete gamma function Q(dof/2, x/2): series expansion for x < a+1,
// Lentz continued fraction otherwise.

namespace {

double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    double ap = a;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("gamma_q: a must be positive");
    if (x < 0.0) throw std::invalid_argument("gamma_q: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

ChiSquareResult chi_square_statistic(const std::vector<std::vector<int64_t>>& table) {
    size_t rows = table.size();
    if (rows < 2) throw std::runtime_error("chi-square table needs >= 2 rows");
    size_t cols = table[0].size();
    if (cols < 2) throw std::runtime_error("chi-square table needs >= 2 columns");
    for (const auto& row : table)
        if (row.size() != cols) throw std::runtime_error("ragged chi-square table");

    std::vector<int64_t> row_tot(rows, 0), col_tot(cols, 0);
    int64_t grand = 0;
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            if (table[i][j] < 0) throw std::runtime_error("negative count in chi-square table");
            row_tot[i] += table[i][j];
            col_tot[j] += table[i][j];
            grand += table[i][j];
        }
    for (int64_t t : row_tot)
        if (t == 0) throw std::runtime_error("zero row marginal in chi-square table");
    for (int64_t t : col_tot)
        if (t == 0) throw std::runtime_error("zero column marginal in chi-square table");

    double stat = 0.0;
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            double expected = static_cast<double>(row_tot[i]) * static_cast<double>(col_tot[j]) /
                              static_cast<double>(grand);
            double diff = static_cast<double>(table[i][j]) - expected;
            stat += diff * diff / expected;
        }

    int dof = static_cast<int>((rows - 1) * (cols - 1));
    double p = regularized_gamma_q(dof / 2.0, stat / 2.0);
    return {stat, dof, p};
}

std::vector<std::pair<std::string, ChiSquareResult>> chi_square_per_attribute(const Dataset& ds) {
    if (!ds.fully_categorical())
        throw std::runtime_error("chi-square scan requires a fully categorical dataset");
    std::vector<std::pair<std::string, ChiSquareResult>> out;
    size_t n_classes = ds.class_domain.size();
    for (size_t a = 0; a < ds.n_attrs(); ++a) {
        size_t levels = ds.schema[a].domain.size();
        std::vector<std::vector<int64_t>> table(levels, std::vector<int64_t>(n_classes, 0));
        for (size_t r = 0; r < ds.n_records(); ++r)
            table[ds.cat_code(r, a)][ds.labels[r]]++;
        out.emplace_back(ds.schema[a].name, chi_square_statistic(table));
    }
    return out;
}

SelectResult select_features(const Dataset& ds, double alpha) {
    auto scan = chi_square_per_attribute(ds);
    std::vector<size_t> drop;
    std::vector<std::string> dropped;
    for (size_t a = 0; a < scan.size(); ++a) {
        if (scan[a].second.p_value > alpha) {
            drop.push_back(a);
            dropped.push_back(scan[a].first);
        }
    }
    return {ds.drop_attrs(drop), std::move(dropped)};
}

SplitResult split_and_partition(const Dataset& ds, const SplitSpec& spec) {
    if (ds.n_records() == 0) throw std::runtime_error("cannot split an empty dataset");
    if (spec.client_count < 1) throw std::runtime_error("client_count must be >= 1");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::runtime_error("train_fraction must lie in (0,1)");

    size_t n = ds.n_records();
    std::vector<uint32_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = static_cast<uint32_t>(i);
    Rng rng = Rng::stream(spec.seed, {stream_tag::split});
    rng.shuffle(order);

    size_t n_train = static_cast<size_t>(std::floor(spec.train_fraction * static_cast<double>(n)));
    size_t k = static_cast<size_t>(spec.client_count);
    if (n_train < k || n_train == n)
        throw std::runtime_error("split leaves an empty client part or empty test set");

    SplitResult out;
    // Block-wise partition: part i takes ranks [floor(i*m/k), floor((i+1)*m/k)).
    for (size_t i = 0; i < k; ++i) {
        size_t lo = (i * n_train) / k;
        size_t hi = ((i + 1) * n_train) / k;
        std::vector<uint32_t> part(order.begin() + lo, order.begin() + hi);
        if (part.empty()) throw std::runtime_error("client part would be empty");
        out.train_parts.push_back(ds.subset(part));
    }
    std::vector<uint32_t> test_rows(order.begin() + n_train, order.end());
    out.test = ds.subset(test_rows);
    return out;
}

DatasetStats dataset_stats(const Dataset& ds) {
    DatasetStats st;
    st.record_count = ds.n_records();
    std::vector<size_t> counts(ds.class_domain.size(), 0);
    for (uint16_t l : ds.labels) counts[l]++;
    size_t lo = SIZE_MAX, hi = 0;
    for (size_t c = 0; c < counts.size(); ++c) {
        st.class_counts[ds.class_domain[c]] = counts[c];
        lo = std::min(lo, counts[c]);
        hi = std::max(hi, counts[c]);
    }
    st.imbalance_ratio = lo > 0 ? static_cast<double>(hi) / static_cast<double>(lo)
                                : std::numeric_limits<double>::infinity();
    return st;
}

}  // namespace ducba

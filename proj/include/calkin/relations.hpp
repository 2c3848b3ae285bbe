#pragma once

#include <Eigen/Dense>

#include "calkin/clark.hpp"

namespace calkin {

template <class C>
struct combination {
    std::vector<self_map<C>> maps;
    std::vector<C> coefficients;
    space_spec space;

    combination() = default;
    combination(std::vector<self_map<C>> ms, std::vector<C> cs, space_spec sp = space_spec())
        : maps(std::move(ms)), coefficients(std::move(cs)), space(sp) {
        if (maps.empty() || maps.size() != coefficients.size())
            throw error(errc::parse_error, "combination needs one coefficient per map");
    }
};

// Maps sharing a contact point, a common (even) order of contact k, and the
// full jet D_k there. The group sums of the coefficients decide compactness.
template <class C>
struct data_group {
    C zeta;
    int order = 0;
    data_vector<C> data;
    std::vector<int> members;
};

template <class C>
struct compactness_verdict {
    bool compact = true;
    std::vector<std::pair<int, C>> violated; // (group index, group sum)
    static constexpr bool exact_mode = is_exact_v<C>;
};

template <class C>
struct relation_space_data {
    int n = 0;
    std::vector<std::vector<int>> generators;    // 0/1 indicator rows, one per group
    std::vector<std::vector<C>> span_basis;      // basis of the generator span
    std::vector<std::vector<C>> kernel_basis;    // basis of its orthogonal complement
};

namespace detail {

template <class C>
bool lex_less_scalar(const C& x, const C& y) {
    if constexpr (is_exact_v<C>) {
        if (x.re != y.re) return x.re < y.re;
        return x.im < y.im;
    } else {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    }
}

template <class C>
bool lex_less_data(const data_vector<C>& a, const data_vector<C>& b) {
    for (std::size_t k = 0; k < std::min(a.entries.size(), b.entries.size()); ++k) {
        if (scalar_ops<C>::compare(a.entries[k], b.entries[k]) != match::equal)
            return lex_less_scalar(a.entries[k], b.entries[k]);
    }
    return a.entries.size() < b.entries.size();
}

} // namespace detail

// Precomputed boundary analysis of a fixed family: contact sets, the union of
// contact points, and the data groups. Verdicts for many coefficient vectors
// then cost one pass over the groups each.
template <class C>
class relation_engine {
  public:
    explicit relation_engine(std::vector<self_map<C>> maps)
        : relation_engine(std::move(maps), {}) {}

    relation_engine(std::vector<self_map<C>> maps, std::vector<contact_set<C>> sets)
        : maps_(std::move(maps)) {
        if (sets.empty())
            for (const auto& m : maps_) sets.push_back(find_contact_points(m));
        if (sets.size() != maps_.size())
            throw error(errc::parse_error, "one contact set per map is required");
        sets_ = std::move(sets);
        for (const auto& cs : sets_) require_class_s(cs);
        build_groups();
    }

    int size() const { return static_cast<int>(maps_.size()); }
    const std::vector<self_map<C>>& maps() const { return maps_; }
    const std::vector<contact_set<C>>& contact_sets() const { return sets_; }
    const std::vector<data_group<C>>& groups() const { return groups_; }
    const std::vector<C>& contact_union() const { return zetas_; }

    // Members of the family with a contact at zeta, as (map index, point).
    std::vector<std::pair<int, const contact_point<C>*>> contacts_at(const C& zeta) const {
        std::vector<std::pair<int, const contact_point<C>*>> out;
        for (int j = 0; j < size(); ++j) {
            const contact_point<C>* p = sets_[static_cast<std::size_t>(j)].at(zeta);
            if (p) out.emplace_back(j, p);
        }
        return out;
    }

    // The grouped-sum criterion: compact iff every group sum vanishes. The
    // verdict does not depend on the space parameter beta.
    compactness_verdict<C> decide(const std::vector<C>& coeffs) const {
        if (coeffs.size() != maps_.size())
            throw error(errc::parse_error, "coefficient count does not match the family");
        compactness_verdict<C> v;
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            C sum(0);
            for (int j : groups_[g].members) sum += coeffs[static_cast<std::size_t>(j)];
            bool zero;
            if constexpr (is_exact_v<C>) {
                zero = is_zero(sum);
            } else {
                double scale = 1e-300;
                for (int j : groups_[g].members)
                    scale = std::max(scale, std::abs(coeffs[static_cast<std::size_t>(j)]));
                zero = std::abs(sum) <= 1e-10 * std::max(1.0, scale);
            }
            if (!zero) {
                v.compact = false;
                v.violated.emplace_back(static_cast<int>(g), sum);
            }
        }
        return v;
    }

    relation_space_data<C> relation_space() const {
        relation_space_data<C> rs;
        rs.n = size();
        for (const auto& g : groups_) {
            std::vector<int> row(static_cast<std::size_t>(rs.n), 0);
            for (int j : g.members) row[static_cast<std::size_t>(j)] = 1;
            rs.generators.push_back(std::move(row));
        }
        if constexpr (is_exact_v<C>) {
            exact_bases(rs);
        } else {
            float_bases(rs);
        }
        return rs;
    }

    int coset_dimension() const {
        relation_space_data<C> rs = relation_space();
        return static_cast<int>(rs.span_basis.size());
    }

    // Basis of the compactness kernel with rational entries, first nonzero
    // entry normalized to one. Exact arithmetic only: the rationality claim is
    // meaningless for float data.
    std::vector<std::vector<rational>> rational_kernel_basis() const {
        if constexpr (!is_exact_v<C>) {
            throw error(errc::exact_mode_required,
                        "rational relation basis requires Gaussian-rational data");
        } else {
            relation_space_data<C> rs = relation_space();
            std::vector<std::vector<rational>> out;
            for (const auto& v : rs.kernel_basis) {
                std::vector<rational> row;
                for (const auto& x : v) {
                    if (x.im != 0)
                        throw error(errc::data_extraction_failed,
                                    "kernel basis vector has a nonreal entry");
                    row.push_back(x.re);
                }
                out.push_back(std::move(row));
            }
            return out;
        }
    }

  private:
    void build_groups() {
        // distinct contact points across the family
        for (std::size_t j = 0; j < sets_.size(); ++j) {
            for (const auto& p : sets_[j].points) {
                bool known = false;
                for (const C& z : zetas_) {
                    match m = scalar_ops<C>::compare(z, p.zeta);
                    if (m == match::indeterminate)
                        throw error(errc::indeterminate_data_match,
                                    "contact points of two maps coincide only borderline",
                                    scalar_ops<C>::as_complex(p.zeta));
                    known = known || m == match::equal;
                }
                if (!known) zetas_.push_back(p.zeta);
            }
        }
        std::sort(zetas_.begin(), zetas_.end(), [](const C& x, const C& y) {
            return detail::angle_in_2pi(scalar_ops<C>::as_complex(x)) <
                   detail::angle_in_2pi(scalar_ops<C>::as_complex(y));
        });
        for (const C& zeta : zetas_) {
            auto here = contacts_at(zeta);
            std::vector<int> orders;
            for (const auto& [j, p] : here)
                if (std::find(orders.begin(), orders.end(), p->order) == orders.end())
                    orders.push_back(p->order);
            std::sort(orders.begin(), orders.end());
            for (int k : orders) {
                std::vector<data_group<C>> local;
                for (const auto& [j, p] : here) {
                    if (p->order != k) continue;
                    bool placed = false;
                    for (auto& g : local) {
                        match m = compare_data(g.data, p->data, k);
                        if (m == match::indeterminate)
                            throw error(errc::indeterminate_data_match,
                                        "boundary jets of two maps agree only borderline",
                                        scalar_ops<C>::as_complex(zeta));
                        if (m == match::equal) {
                            g.members.push_back(j);
                            placed = true;
                            break;
                        }
                    }
                    if (!placed) {
                        data_group<C> g;
                        g.zeta = zeta;
                        g.order = k;
                        g.data = p->data;
                        g.members.push_back(j);
                        local.push_back(std::move(g));
                    }
                }
                std::sort(local.begin(), local.end(),
                          [](const data_group<C>& a, const data_group<C>& b) {
                              return detail::lex_less_data(a.data, b.data);
                          });
                for (auto& g : local) groups_.push_back(std::move(g));
            }
        }
    }

    void exact_bases(relation_space_data<C>& rs) const {
        std::size_t rows = rs.generators.size(), cols = static_cast<std::size_t>(rs.n);
        std::vector<std::vector<rational>> a(rows, std::vector<rational>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = rs.generators[i][j];
        // reduced row echelon form over Q
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t sel = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a[i][c] != 0) { sel = i; break; }
            if (sel == rows) continue;
            std::swap(a[r], a[sel]);
            rational inv = a[r][c];
            for (auto& x : a[r]) x /= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || a[i][c] == 0) continue;
                rational f = a[i][c];
                for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            }
            pivots.push_back(c);
            ++r;
        }
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<C> row;
            for (std::size_t j = 0; j < cols; ++j) row.push_back(C(a[i][j]));
            rs.span_basis.push_back(std::move(row));
        }
        std::vector<bool> is_pivot(cols, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        for (std::size_t f = 0; f < cols; ++f) {
            if (is_pivot[f]) continue;
            std::vector<rational> v(cols, rational(0));
            v[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
            rational lead(0);
            for (const auto& x : v)
                if (x != 0) { lead = x; break; }
            std::vector<C> row;
            for (auto& x : v) row.push_back(C(x / lead));
            rs.kernel_basis.push_back(std::move(row));
        }
    }

    void float_bases(relation_space_data<C>& rs) const {
        long rows = static_cast<long>(rs.generators.size()), cols = rs.n;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(std::max(rows, 1L), cols);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                a(i, j) = rs.generators[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (rows == 0) {
            for (long j = 0; j < cols; ++j) {
                std::vector<C> v(static_cast<std::size_t>(cols), C(0));
                v[static_cast<std::size_t>(j)] = C(1);
                rs.kernel_basis.push_back(std::move(v));
            }
            return;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        lu.setThreshold(1e-10);
        // row-space basis through the transpose
        Eigen::FullPivLU<Eigen::MatrixXd> lut(a.transpose());
        lut.setThreshold(1e-10);
        Eigen::MatrixXd rowspan = lut.image(a.transpose());
        for (long c = 0; c < rowspan.cols(); ++c) {
            std::vector<C> v;
            for (long j = 0; j < cols; ++j) v.push_back(C(rowspan(j, c)));
            rs.span_basis.push_back(std::move(v));
        }
        if (lu.dimensionOfKernel() > 0) {
            Eigen::MatrixXd ker = lu.kernel();
            for (long c = 0; c < ker.cols(); ++c) {
                std::vector<C> v;
                for (long j = 0; j < cols; ++j) v.push_back(C(ker(j, c)));
                rs.kernel_basis.push_back(std::move(v));
            }
        }
    }

    std::vector<self_map<C>> maps_;
    std::vector<contact_set<C>> sets_;
    std::vector<C> zetas_;
    std::vector<data_group<C>> groups_;
};

template <class C>
compactness_verdict<C> decide_compact(const combination<C>& comb) {
    relation_engine<C> eng(comb.maps);
    return eng.decide(comb.coefficients);
}

template <class C>
int coset_dimension(const std::vector<self_map<C>>& maps) {
    return relation_engine<C>(maps).coset_dimension();
}

template <class C>
std::vector<std::vector<rational>> relation_basis(const std::vector<self_map<C>>& maps) {
    return relation_engine<C>(maps).rational_kernel_basis();
}

} // namespace calkin

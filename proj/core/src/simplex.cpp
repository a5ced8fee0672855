#include "atlas/simplex.hpp"

#include <stdexcept>

namespace atlas::lp {

namespace {

class Tableau {
public:
    Tableau(int num_vars, std::span<const Constraint> constraints) : num_vars_(num_vars)
    {
        const int rows = static_cast<int>(constraints.size());
        int slacks = 0, artificials = 0;
        for (const auto& c : constraints) {
            auto rel = effective_relation(c);
            if (rel != Relation::Equal) ++slacks;
            if (rel != Relation::LessEqual) ++artificials;
        }
        first_slack_ = num_vars_;
        first_art_ = first_slack_ + slacks;
        cols_ = first_art_ + artificials;
        rhs_col_ = cols_;
        cells_.assign(rows + 1, std::vector<Rational>(cols_ + 1, Rational(0)));
        basis_.assign(rows, -1);

        int slack = first_slack_, art = first_art_;
        for (int r = 0; r < rows; ++r) {
            const auto& c = constraints[r];
            const bool flip = c.rhs < 0;
            auto& row = cells_[r];
            for (const auto& [var, coef] : c.terms) {
                if (var < 0 || var >= num_vars_) {
                    throw std::out_of_range("constraint references unknown variable");
                }
                row[var] += flip ? Rational(-coef) : coef;
            }
            row[rhs_col_] = flip ? Rational(-c.rhs) : c.rhs;
            switch (effective_relation(c)) {
            case Relation::LessEqual:
                row[slack] = 1;
                basis_[r] = slack++;
                break;
            case Relation::GreaterEqual:
                row[slack++] = -1;
                row[art] = 1;
                basis_[r] = art++;
                break;
            case Relation::Equal:
                row[art] = 1;
                basis_[r] = art++;
                break;
            }
        }
        // Phase-one objective: minimize the sum of artificials. Its row holds
        // reduced costs; the rhs cell holds minus the objective value.
        auto& obj = cells_[rows];
        for (int r = 0; r < rows; ++r) {
            if (basis_[r] < first_art_) continue;
            for (int j = 0; j <= cols_; ++j) {
                if (j >= first_art_ && j < cols_) continue;
                if (!cells_[r][j].is_zero()) obj[j] -= cells_[r][j];
            }
        }
    }

    FeasibilityResult solve()
    {
        FeasibilityResult result;
        const int rows = static_cast<int>(basis_.size());
        auto& obj = cells_[rows];
        while (true) {
            // Bland: lowest-index column with negative reduced cost.
            int enter = -1;
            for (int j = 0; j < cols_; ++j) {
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) break;
            int leave = -1;
            Rational best_ratio;
            for (int r = 0; r < rows; ++r) {
                const auto& a = cells_[r][enter];
                if (a <= 0) continue;
                Rational ratio = cells_[r][rhs_col_] / a;
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leave])) {
                    leave = r;
                    best_ratio = std::move(ratio);
                }
            }
            if (leave < 0) {
                // Phase one is bounded below by zero.
                throw std::logic_error("phase-one simplex reported an unbounded ray");
            }
            pivot(leave, enter);
            ++result.pivots;
        }
        result.feasible = obj[rhs_col_].is_zero();
        if (result.feasible) {
            result.point.assign(num_vars_, Rational(0));
            for (int r = 0; r < rows; ++r) {
                if (basis_[r] < num_vars_) result.point[basis_[r]] = cells_[r][rhs_col_];
            }
        }
        return result;
    }

private:
    static Relation effective_relation(const Constraint& c)
    {
        if (c.rhs >= 0 || c.relation == Relation::Equal) return c.relation;
        return c.relation == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    }

    void pivot(int pr, int pc)
    {
        auto& prow = cells_[pr];
        const Rational inv = 1 / prow[pc];
        nonzero_.clear();
        for (int j = 0; j <= cols_; ++j) {
            if (prow[j].is_zero()) continue;
            prow[j] *= inv;
            nonzero_.push_back(j);
        }
        for (int r = 0; r < static_cast<int>(cells_.size()); ++r) {
            if (r == pr) continue;
            auto& row = cells_[r];
            if (row[pc].is_zero()) continue;
            const Rational f = row[pc];
            for (int j : nonzero_) row[j] -= f * prow[j];
        }
        basis_[pr] = pc;
    }

    int num_vars_;
    int first_slack_ = 0, first_art_ = 0, cols_ = 0, rhs_col_ = 0;
    std::vector<std::vector<Rational>> cells_;
    std::vector<int> basis_;
    std::vector<int> nonzero_;
};

} // namespace

FeasibilityResult find_feasible_point(int num_vars, std::span<const Constraint> constraints)
{
    if (num_vars < 0) {
        throw std::invalid_argument("negative variable count");
    }
    return Tableau(num_vars, constraints).solve();
}

} // namespace atlas::lp

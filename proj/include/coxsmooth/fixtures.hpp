#pragma once

#include <memory>
#include <string>

#include "coxsmooth/coxeter.hpp"

namespace coxsmooth::fixtures {

// A2: two generators s, t with m(s,t) = 3.
std::shared_ptr<const CoxeterSystem> make_a2();

// Dihedral group I2(m): generators s, t with m(s,t) = m (kInfiniteBond ok).
std::shared_ptr<const CoxeterSystem> make_dihedral(int m);

// Uniform group W(m,n): generators s1..sn, every off-diagonal bond equal to m
// (kInfiniteBond ok).
std::shared_ptr<const CoxeterSystem> make_uniform(int m, int n);

// Triangle group with generators r, s, t and the given bonds.
std::shared_ptr<const CoxeterSystem> make_triangle(int m_rs, int m_rt,
                                                   int m_st);

// The (2,3,5) triangle group (named H3): m(r,s) = 2, m(r,t) = 3, m(s,t) = 5.
std::shared_ptr<const CoxeterSystem> make_h3();

// Rank-4 fixture: generators s1..s4, complete graph, all bonds 3 except
// m(s2,s4) = 4.
std::shared_ptr<const CoxeterSystem> make_clique4();

// Rank-5 fixture: generators s1..s5 with m(s4,s5) = p, infinite bonds on
// s1-s4, s2-s4, s1-s5, s2-s5, s2-s3, and all remaining pairs commuting.
std::shared_ptr<const CoxeterSystem> make_mixed5(int p);

// JSON document for a system, in the group-file format accepted by
// parse_group (bonds as integers, infinity as the string "inf").
std::string group_json(const CoxeterSystem& sys);

}  // namespace coxsmooth::fixtures

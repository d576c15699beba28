#ifndef ORBITPOW_ENUMERATE_HPP
#define ORBITPOW_ENUMERATE_HPP

#include <functional>

#include "orbitpow/exactnum.hpp"

namespace orbitpow {

// Streams every p/q in lowest terms with |p| <= B, 1 <= q <= B (all
// rationals of height <= log B), each exactly once, in (q ascending, then p
// ascending) order. q = 1 contributes the integers including 0.
class RationalEnumerator {
public:
    explicit RationalEnumerator(long bound);
    bool next(long& p_out, long& q_out);

private:
    long bound_;
    long q_;
    long p_;
};

void enumerate_rationals(long bound, const std::function<void(long p, long q)>& fn);

// Worker count: explicit request wins, then ORBITPOW_WORKERS, then the
// hardware count.
int resolve_workers(int requested);

// Calls fn(q) once for every q in [1, bound], distributing q values over
// workers. fn must write only to per-q state.
void for_each_q_parallel(long bound, int workers, const std::function<void(long q)>& fn);

}  // namespace orbitpow

#endif

#include "orbitpow/enumerate.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

namespace orbitpow {

RationalEnumerator::RationalEnumerator(long bound) : bound_(bound), q_(1), p_(-bound - 1) {
    if (bound < 1) throw InvalidInput("enumeration bound must be >= 1");
}

bool RationalEnumerator::next(long& p_out, long& q_out) {
    while (q_ <= bound_) {
        ++p_;
        if (p_ > bound_) {
            ++q_;
            p_ = -bound_ - 1;
            continue;
        }
        if (q_ > 1 && std::gcd(p_ < 0 ? -p_ : p_, q_) != 1) continue;
        p_out = p_;
        q_out = q_;
        return true;
    }
    return false;
}

void enumerate_rationals(long bound, const std::function<void(long, long)>& fn) {
    RationalEnumerator en(bound);
    long p, q;
    while (en.next(p, q)) fn(p, q);
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ORBITPOW_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void for_each_q_parallel(long bound, int workers, const std::function<void(long)>& fn) {
    workers = resolve_workers(workers);
    if (workers == 1 || bound < 4) {
        for (long q = 1; q <= bound; ++q) fn(q);
        return;
    }
    std::atomic<long> next_q{1};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                long q = next_q.fetch_add(1);
                if (q > bound) return;
                try {
                    fn(q);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace orbitpow

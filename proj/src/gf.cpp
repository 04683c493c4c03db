#include "hept/gf.hpp"

#include <stdexcept>

namespace hept {

namespace {

bool is_small_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Little polynomial helpers over F_p, coefficients low-to-high.
using Poly = std::vector<uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// reduce by a monic modulus
Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
    trim(a);
    size_t k = m.size() - 1;
    while (a.size() > k) {
        uint32_t c = a.back();
        size_t off = a.size() - 1 - k;
        if (c)
            for (size_t i = 0; i < k; ++i)
                a[off + i] = (a[off + i] + (uint64_t)(p - 1) * c % p * m[i]) % p;
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (uint64_t)a[i] * b[j]) % p;
    }
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& m, uint32_t p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic
        uint32_t lead = b.back();
        if (lead != 1) {
            // invert lead mod p
            uint32_t inv = 1, x = lead, e = p - 2;
            while (e) {
                if (e & 1) inv = (uint64_t)inv * x % p;
                x = (uint64_t)x * x % p;
                e >>= 1;
            }
            for (auto& c : b) c = (uint64_t)c * inv % p;
        }
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool poly_irreducible(const Poly& m, uint32_t p) {
    uint32_t k = (uint32_t)m.size() - 1;
    // x^(p^k) == x mod m, and gcd(x^(p^(k/r)) - x, m) = 1 for prime r | k.
    Poly x{0, 1};
    uint64_t pk = 1;
    for (uint32_t i = 0; i < k; ++i) pk *= p;
    Poly xq = poly_powmod(x, pk, m, p);
    Poly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty()) return false;
    for (uint32_t r = 2; r <= k; ++r) {
        if (k % r != 0) continue;
        bool prime = is_small_prime(r);
        if (!prime) continue;
        uint64_t pe = 1;
        for (uint32_t i = 0; i < k / r; ++i) pe *= p;
        Poly xe = poly_powmod(x, pe, m, p);
        if (xe.size() < 2) xe.resize(2, 0);
        xe[1] = (xe[1] + p - 1) % p;
        trim(xe);
        Poly g = poly_gcd(m, xe, p);
        if (g.size() != 1) return false;
    }
    return true;
}

Poly decode_tail(uint64_t code, uint32_t p, uint32_t k) {
    Poly t(k + 1, 0);
    for (uint32_t i = 0; i < k; ++i) {
        t[i] = code % p;
        code /= p;
    }
    t[k] = 1;
    return t;
}

}  // namespace

uint64_t canonical_modulus_code(uint32_t p, uint32_t k) {
    if (k == 1) return 0;  // modulus x: plain F_p
    uint64_t pk = 1;
    for (uint32_t i = 0; i < k; ++i) pk *= p;
    for (uint64_t code = 0; code < pk; ++code) {
        Poly m = decode_tail(code, p, k);
        if (poly_irreducible(m, p)) return code;
    }
    throw std::logic_error("no irreducible polynomial found");
}

Field::Field(uint32_t p, uint32_t k) : p_(p), k_(k) {
    if (!is_small_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    q_ = 1;
    for (uint32_t i = 0; i < k; ++i) {
        q_ *= p;
        if (q_ > (1ull << 31)) throw std::invalid_argument("field too large (p^k > 2^31)");
    }
    mod_code_ = canonical_modulus_code(p, k);
    Poly m = decode_tail(mod_code_, p, k);
    mod_tail_.assign(m.begin(), m.end() - 1);
    if (q_ <= (1ull << 16)) build_tables();
}

felt Field::add_raw(felt a, felt b) const {
    if (p_ == 2) return a ^ b;
    felt r = 0, mul = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        r += ((da + db) % p_) * mul;
        mul *= p_;
    }
    return r;
}

felt Field::mul_raw(felt a, felt b) const {
    // schoolbook product of digit vectors, reduced by the monic modulus
    std::vector<uint32_t> da(k_), db(k_);
    for (uint32_t i = 0; i < k_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    std::vector<uint32_t> r(2 * k_, 0);
    for (uint32_t i = 0; i < k_; ++i) {
        if (!da[i]) continue;
        for (uint32_t j = 0; j < k_; ++j)
            r[i + j] = (r[i + j] + (uint64_t)da[i] * db[j]) % p_;
    }
    for (uint32_t d = 2 * k_ - 1; d >= k_; --d) {
        uint32_t c = r[d];
        if (c) {
            r[d] = 0;
            for (uint32_t i = 0; i < k_; ++i)
                r[d - k_ + i] = (r[d - k_ + i] + (uint64_t)(p_ - 1) * c % p_ * mod_tail_[i]) % p_;
        }
        if (d == k_) break;
    }
    felt out = 0, mul = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        out += r[i] * mul;
        mul *= p_;
    }
    return out;
}

void Field::build_tables() {
    // find a multiplicative generator, then log/antilog tables
    uint32_t q = (uint32_t)q_;
    log_.assign(q, 0);
    exp_.assign(2 * (q - 1), 0);
    // factor q-1
    std::vector<uint64_t> primes;
    uint64_t n = q - 1;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            primes.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) primes.push_back(n);
    auto pw = [&](felt a, uint64_t e) {
        felt r = 1;
        while (e) {
            if (e & 1) r = mul_raw(r, a);
            a = mul_raw(a, a);
            e >>= 1;
        }
        return r;
    };
    felt g = 0;
    for (felt cand = 2; cand < q; ++cand) {
        bool ok = true;
        for (uint64_t pr : primes)
            if (pw(cand, (q - 1) / pr) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (!g && q == 2) g = 1;
    felt cur = 1;
    for (uint32_t i = 0; i < q - 1; ++i) {
        exp_[i] = cur;
        exp_[i + (q - 1)] = cur;
        log_[cur] = i;
        cur = mul_raw(cur, g);
    }
    tabled_ = true;
}

felt Field::add(felt a, felt b) const { return add_raw(a, b); }

felt Field::neg(felt a) const {
    if (p_ == 2) return a;
    felt r = 0, mul = 1;
    for (uint32_t i = 0; i < k_; ++i) {
        uint32_t d = a % p_;
        a /= p_;
        r += (d ? p_ - d : 0) * mul;
        mul *= p_;
    }
    return r;
}

felt Field::sub(felt a, felt b) const { return add_raw(a, neg(b)); }

felt Field::mul(felt a, felt b) const {
    if (!a || !b) return 0;
    if (tabled_) return exp_[log_[a] + log_[b]];
    return mul_raw(a, b);
}

felt Field::mul_add(felt a, felt b, felt c) const {
    if (!a || !b) return c;
    if (tabled_) return add_raw(exp_[log_[a] + log_[b]], c);
    return add_raw(mul_raw(a, b), c);
}

felt Field::inv(felt a) const {
    if (!a) throw std::domain_error("zero has no inverse");
    if (tabled_) {
        uint32_t l = log_[a];
        return l == 0 ? 1 : exp_[(uint32_t)q_ - 1 - l];
    }
    return pow(a, q_ - 2);
}

felt Field::pow(felt a, uint64_t e) const {
    if (!a) return e == 0 ? 1 : 0;
    if (tabled_) {
        uint64_t l = (uint64_t)log_[a] * (e % (q_ - 1)) % (q_ - 1);
        return exp_[l];
    }
    felt r = 1;
    e %= (q_ - 1) ? (q_ - 1) : 1;
    while (e) {
        if (e & 1) r = mul_raw(r, a);
        a = mul_raw(a, a);
        e >>= 1;
    }
    return r;
}

felt Field::from_int(int64_t v) const {
    int64_t m = v % (int64_t)p_;
    if (m < 0) m += p_;
    return (felt)m;
}

uint32_t Field::coeff(felt a, uint32_t i) const {
    for (uint32_t j = 0; j < i; ++j) a /= p_;
    return a % p_;
}

bool Field::sqrt(felt a, felt& out) const {
    if (!a) {
        out = 0;
        return true;
    }
    if (p_ == 2) {
        // Frobenius is bijective: sqrt(a) = a^(2^(k-1))
        out = pow(a, q_ / 2);
        return true;
    }
    // odd characteristic: a is a square iff a^((q-1)/2) = 1
    if (pow(a, (q_ - 1) / 2) != 1) return false;
    if (q_ % 4 == 3) {
        out = pow(a, (q_ + 1) / 4);
        return true;
    }
    // Tonelli-Shanks
    uint64_t s = 0, t = q_ - 1;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    felt z = 2;
    while (z < q_ && pow(z, (q_ - 1) / 2) == 1) ++z;
    felt c = pow(z, t);
    felt x = pow(a, (t + 1) / 2);
    felt tt = pow(a, t);
    uint64_t m = s;
    while (tt != 1) {
        uint64_t i = 0;
        felt e = tt;
        while (e != 1) {
            e = mul(e, e);
            ++i;
        }
        felt b = c;
        for (uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
        x = mul(x, b);
        c = mul(b, b);
        tt = mul(tt, c);
        m = i;
    }
    out = x;
    return true;
}

std::string Field::describe() const {
    return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + "), modulus tail code " +
           std::to_string(mod_code_);
}

// ---------------------------------------------------------------- Rng

namespace {
uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}
inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
    if (!(s_[0] | s_[1] | s_[2] | s_[3])) s_[0] = 1;
}

Rng::Rng(uint64_t seed, const std::string& tag) : Rng(seed ^ fnv1a(tag)) {}

uint64_t Rng::next() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

uint64_t Rng::below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = next();
    } while (v >= lim);
    return v % n;
}

felt Rng::element(const Field& f) { return (felt)below(f.order()); }

felt Rng::nonzero(const Field& f) { return (felt)(1 + below(f.order() - 1)); }

}  // namespace hept

#include "necklace/scalar.hpp"

#include <algorithm>
#include <cstdlib>

#include "necklace/errors.hpp"

namespace necklace::scalar_field {

std::string SignCertificate::verdict_str() const {
    switch (verdict) {
        case Sign::StrictlyNegative: return "StrictlyNegative";
        case Sign::Zero: return "Zero";
        case Sign::StrictlyPositive: return "StrictlyPositive";
        default: return "Undecided";
    }
}

long Settings::default_bits() {
    static const long bits = [] {
        const char* env = std::getenv("NECKLACE_PRECISION_BITS");
        if (!env) return 128L;
        long v = std::atol(env);
        if (v < 16) v = 16;
        if (v > hard_cap()) v = hard_cap();
        return v;
    }();
    return bits;
}

const std::vector<long>& Settings::ladder() {
    static const std::vector<long> l = {64, 128, 256, 512, 1024};
    return l;
}

namespace detail {

AtomRegistry& AtomRegistry::instance() {
    static AtomRegistry r;
    return r;
}

int AtomRegistry::intern(const TrigFrac& radicand) {
    std::lock_guard<std::mutex> lk(mu_);
    std::string k = radicand.key();
    auto it = by_key_.find(k);
    if (it != by_key_.end()) return it->second;
    int id = static_cast<int>(radicands_.size());
    radicands_.push_back(radicand);
    by_key_.emplace(std::move(k), id);
    return id;
}

const TrigFrac& AtomRegistry::radicand(int id) const {
    std::lock_guard<std::mutex> lk(mu_);
    return radicands_.at(static_cast<std::size_t>(id));
}

Interval AtomRegistry::eval(int id, mpfr_prec_t prec) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find({id, prec});
        if (it != cache_.end()) return it->second;
    }
    Interval rad = radicand(id).eval(prec);
    Interval r = rad.sqrt();
    std::lock_guard<std::mutex> lk(mu_);
    return cache_.emplace(std::make_pair(id, prec), r).first->second;
}

void ScalarNode::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

bool ScalarNode::atom_free() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

const TrigFrac& ScalarNode::constant_term() const {
    static const TrigFrac zero;
    if (terms_.empty()) return zero;
    if (!atom_free()) throw DomainError("scalar is not atom-free");
    return terms_.begin()->second;
}

Interval ScalarNode::eval(mpfr_prec_t prec) const {
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        auto it = cache_.find(prec);
        if (it != cache_.end()) return it->second;
    }
    Interval acc = Interval::from_long(0, prec);
    auto& reg = AtomRegistry::instance();
    for (const auto& [atoms, coeff] : terms_) {
        Interval t = coeff.eval(prec);
        for (int id : atoms) t = t.mul(reg.eval(id, prec));
        acc = acc.add(t);
    }
    std::lock_guard<std::mutex> lk(cache_mu_);
    // Every cached enclosure contains the same exact real, so intersecting
    // with the narrowest earlier one keeps refinement monotone.
    for (const auto& [p, iv] : cache_) {
        (void)p;
        acc = acc.intersect(iv);
    }
    return cache_.emplace(prec, acc).first->second;
}

double ScalarNode::to_double() const {
    double acc = 0;
    auto& reg = AtomRegistry::instance();
    for (const auto& [atoms, coeff] : terms_) {
        double t = coeff.to_double();
        for (int id : atoms) t *= reg.eval(id, 64).mid_double();
        acc += t;
    }
    return acc;
}

namespace {

using Monomials = ScalarNode::Monomials;

void accumulate(Monomials& into, const std::vector<int>& key, const TrigFrac& coeff) {
    if (coeff.is_zero()) return;
    auto it = into.find(key);
    if (it == into.end()) {
        into.emplace(key, coeff);
    } else {
        TrigFrac s = it->second + coeff;
        if (s.is_zero()) {
            into.erase(it);
        } else {
            it->second = std::move(s);
        }
    }
}

// Multiply two square-free atom monomials; atoms shared by both sides fold
// back into the coefficient as their radicands.
void mul_keys(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& key,
              TrigFrac& coeff) {
    key.clear();
    auto& reg = AtomRegistry::instance();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            key.push_back(a[i++]);
        } else if (b[j] < a[i]) {
            key.push_back(b[j++]);
        } else {
            coeff = coeff * reg.radicand(a[i]);
            ++i;
            ++j;
        }
    }
    key.insert(key.end(), a.begin() + static_cast<long>(i), a.end());
    key.insert(key.end(), b.begin() + static_cast<long>(j), b.end());
}

Monomials mul_terms(const Monomials& x, const Monomials& y) {
    Monomials r;
    std::vector<int> key;
    for (const auto& [ka, ca] : x) {
        for (const auto& [kb, cb] : y) {
            TrigFrac c = ca * cb;
            mul_keys(ka, kb, key, c);
            accumulate(r, key, c);
        }
    }
    return r;
}

bool contains_atom(const std::vector<int>& key, int id) {
    return std::binary_search(key.begin(), key.end(), id);
}

} // namespace

} // namespace detail

using detail::ScalarNode;

CertifiedScalar::CertifiedScalar() : node_(ScalarNode::make({})) {}

CertifiedScalar CertifiedScalar::from_long(long v) {
    return from_rational(mpq_class(v));
}

CertifiedScalar CertifiedScalar::from_rational(const mpq_class& q) {
    return from_trig(TrigFrac::rational(q));
}

CertifiedScalar CertifiedScalar::from_trig(const TrigFrac& t) {
    ScalarNode::Monomials m;
    if (!t.is_zero()) m.emplace(std::vector<int>{}, t);
    return CertifiedScalar(ScalarNode::make(std::move(m)));
}

const TrigFrac& CertifiedScalar::exact_value() const {
    return node_->constant_term();
}

CertifiedScalar CertifiedScalar::operator-() const {
    ScalarNode::Monomials m;
    for (const auto& [k, c] : node_->terms()) m.emplace(k, -c);
    return CertifiedScalar(ScalarNode::make(std::move(m)));
}

CertifiedScalar CertifiedScalar::operator+(const CertifiedScalar& o) const {
    ScalarNode::Monomials m = node_->terms();
    for (const auto& [k, c] : o.node_->terms()) detail::accumulate(m, k, c);
    return CertifiedScalar(ScalarNode::make(std::move(m)));
}

CertifiedScalar CertifiedScalar::operator-(const CertifiedScalar& o) const {
    return *this + (-o);
}

CertifiedScalar CertifiedScalar::operator*(const CertifiedScalar& o) const {
    return CertifiedScalar(
        ScalarNode::make(detail::mul_terms(node_->terms(), o.node_->terms())));
}

CertifiedScalar CertifiedScalar::operator/(const CertifiedScalar& o) const {
    if (o.node_->is_zero_form()) throw DomainError("division by exact zero");
    ScalarNode::Monomials num = node_->terms();
    ScalarNode::Monomials den = o.node_->terms();
    // Clear the divisor's atoms one at a time: write den = P + a*Q and
    // multiply both sides by P - a*Q, which removes a since a^2 is exact.
    while (!(den.size() == 1 && den.begin()->first.empty())) {
        if (den.empty()) throw DomainError("division by exact zero");
        int a = -1;
        for (const auto& [k, c] : den) {
            if (!k.empty()) {
                a = k.back();
                break;
            }
        }
        ScalarNode::Monomials conj;
        for (const auto& [k, c] : den) {
            conj.emplace(k, detail::contains_atom(k, a) ? -c : c);
        }
        num = detail::mul_terms(num, conj);
        den = detail::mul_terms(den, conj);
    }
    const TrigFrac& d = den.begin()->second;
    ScalarNode::Monomials m;
    for (const auto& [k, c] : num) m.emplace(k, c / d);
    return CertifiedScalar(ScalarNode::make(std::move(m)));
}

CertifiedScalar CertifiedScalar::sqrt(long max_bits) const {
    if (node_->is_zero_form()) return CertifiedScalar();
    if (!node_->atom_free()) throw DomainError("sqrt of a scalar with nested roots");
    const TrigFrac& rad = node_->constant_term();
    SignCertificate sc = certify_sign(*this, max_bits);
    if (sc.is_negative()) throw DomainError("sqrt of a negative value");
    if (!sc.decided()) throw UncertifiedError("sqrt radicand sign undecided at precision cap");
    int id = detail::AtomRegistry::instance().intern(rad);
    ScalarNode::Monomials m;
    m.emplace(std::vector<int>{id}, TrigFrac::rational(1));
    return CertifiedScalar(ScalarNode::make(std::move(m)));
}

Interval CertifiedScalar::interval(long bits) const {
    if (bits <= 0) bits = Settings::default_bits();
    return node_->eval(static_cast<mpfr_prec_t>(bits));
}

std::pair<std::string, std::string> CertifiedScalar::decimal_with_error(long bits) const {
    return interval(bits).decimal_with_error();
}

CertifiedScalar cos_frac(long i, long n) {
    if (n < 2 || n % 2 != 0) throw DomainError("angle grid order must be even and >= 2");
    return CertifiedScalar::from_trig(TrigFrac(TrigPoly::cos_sym(i, n)));
}

CertifiedScalar sin_frac(long i, long n) {
    if (n < 2 || n % 2 != 0) throw DomainError("angle grid order must be even and >= 2");
    return CertifiedScalar::from_trig(TrigFrac(TrigPoly::sin_sym(i, n)));
}

SignCertificate certify_sign(const CertifiedScalar& a, long max_bits) {
    if (a.is_ring_zero()) return {Sign::Zero, 0};
    if (max_bits > Settings::hard_cap()) max_bits = Settings::hard_cap();
    long used = 0;
    for (long bits : Settings::ladder()) {
        if (bits > max_bits && used > 0) break;
        if (bits > max_bits) bits = max_bits;
        used = bits;
        try {
            Interval iv = a.interval(bits);
            if (iv.strictly_positive()) return {Sign::StrictlyPositive, used};
            if (iv.strictly_negative()) return {Sign::StrictlyNegative, used};
            // A point enclosure cannot shrink further; more bits are useless.
            if (iv.is_point()) break;
        } catch (const IndeterminateEval&) {
            // A sub-enclosure straddled zero; retry wider.
        }
        if (bits == max_bits) break;
    }
    return {Sign::Undecided, used};
}

SignCertificate certify_compare(const CertifiedScalar& a, const CertifiedScalar& b,
                                long max_bits) {
    return certify_sign(a - b, max_bits);
}

} // namespace necklace::scalar_field

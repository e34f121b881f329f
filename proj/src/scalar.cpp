#include "kcp/scalar.hpp"

#include "kcp/errors.hpp"

namespace kcp {

Scalar scalar_from_string(const std::string& text) {
    Scalar q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw Error("bad rational literal: " + text);
    q.canonicalize();
    return q;
}

Scalar scalar_pow(const Scalar& base, unsigned long exp) {
    Scalar out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    return out;
}

} // namespace kcp

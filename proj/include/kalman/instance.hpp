#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace kalman {

/// Parameters of one Kalman-degree problem: the subspace dimension d together with either
/// the factor dimensions (n_1..n_k) of a general tensor or (n, order) of a symmetric one.
struct KalmanInstance {
    unsigned d = 1;
    std::vector<unsigned> dims;
    bool symmetric = false;
    unsigned n = 0;
    unsigned order = 0;

    static KalmanInstance general(unsigned d, std::vector<unsigned> dims) {
        KalmanInstance inst;
        inst.d = d;
        inst.dims = std::move(dims);
        inst.validate();
        return inst;
    }

    static KalmanInstance symmetric_tensor(unsigned d, unsigned n, unsigned order) {
        KalmanInstance inst;
        inst.d = d;
        inst.symmetric = true;
        inst.n = n;
        inst.order = order;
        inst.validate();
        return inst;
    }

    void validate() const {
        if (symmetric) {
            if (order < 2)
                throw ParameterError("symmetric order k must be >= 2");
            if (d < 1 || d > n)
                throw ParameterError("need 1 <= d <= n");
            return;
        }
        if (dims.empty())
            throw ParameterError("dims must be nonempty");
        for (auto ni : dims)
            if (ni < 1)
                throw ParameterError("every factor dimension must be >= 1");
        if (d < 1 || d > dims.front())
            throw ParameterError("need 1 <= d <= n_1");
    }

    std::string describe() const {
        std::ostringstream os;
        if (symmetric) {
            os << "(d=" << d << ", n=" << n << ", k=" << order << ")";
            return os.str();
        }
        os << "(d=" << d << "; ";
        for (std::size_t i = 0; i < dims.size(); ++i)
            os << (i ? "," : "") << dims[i];
        os << ")";
        return os.str();
    }

    friend bool operator==(const KalmanInstance&, const KalmanInstance&) = default;
};

} // namespace kalman

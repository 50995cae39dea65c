#pragma once

// Umbrella header.

#include "ips/conditioning.hpp"
#include "ips/conventions.hpp"
#include "ips/covariance.hpp"
#include "ips/dataset.hpp"
#include "ips/errors.hpp"
#include "ips/figures.hpp"
#include "ips/fock.hpp"
#include "ips/metrics.hpp"
#include "ips/quasiprob.hpp"

#pragma once

#include "fatlines/cache.hpp"
#include "fatlines/cli.hpp"
#include "fatlines/dense_matrix.hpp"
#include "fatlines/divisor.hpp"
#include "fatlines/interpolation.hpp"
#include "fatlines/json_io.hpp"
#include "fatlines/lines.hpp"
#include "fatlines/monomial.hpp"
#include "fatlines/prime_field.hpp"
#include "fatlines/rational.hpp"
#include "fatlines/system.hpp"
#include "fatlines/verifier.hpp"
#include "fatlines/version.hpp"
#include "fatlines/waldschmidt.hpp"

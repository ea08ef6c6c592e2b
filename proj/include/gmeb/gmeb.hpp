#pragma once

// Umbrella header: the whole library.

#include "gmeb/matrix.hpp"
#include "gmeb/eig.hpp"
#include "gmeb/rng.hpp"
#include "gmeb/states.hpp"
#include "gmeb/tensor_ops.hpp"
#include "gmeb/measures.hpp"
#include "gmeb/bounds.hpp"
#include "gmeb/oracle.hpp"
#include "gmeb/io.hpp"
#include "gmeb/sweep.hpp"
#include "gmeb/verify.hpp"

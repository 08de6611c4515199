#pragma once

#include "telegate/analysis.hpp"
#include "telegate/bell.hpp"
#include "telegate/io.hpp"
#include "telegate/protocol.hpp"
#include "telegate/random.hpp"
#include "telegate/states.hpp"
#include "telegate/tensor.hpp"
#include "telegate/verify.hpp"

#pragma once

#include "coxkit/scalar.hpp"
#include "coxkit/graph.hpp"
#include "coxkit/bilinear.hpp"
#include "coxkit/catalog.hpp"
#include "coxkit/parse.hpp"
#include "coxkit/words.hpp"
#include "coxkit/dynamics.hpp"
#include "coxkit/finite_group.hpp"
#include "coxkit/decompose.hpp"
#include "coxkit/json_io.hpp"

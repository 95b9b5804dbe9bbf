#pragma once

#include "frobenius/catalog.hpp"
#include "frobenius/cli.hpp"
#include "frobenius/esk.hpp"
#include "frobenius/jacobi.hpp"
#include "frobenius/multipoly.hpp"
#include "frobenius/providers.hpp"
#include "frobenius/roots.hpp"
#include "frobenius/saito.hpp"
#include "frobenius/toda.hpp"

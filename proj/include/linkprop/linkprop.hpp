// Copyright 2026 The linkprop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINKPROP_LINKPROP_HPP_
#define LINKPROP_LINKPROP_HPP_

#include "linkprop/classifier.hpp"
#include "linkprop/closed_form.hpp"
#include "linkprop/error.hpp"
#include "linkprop/evaluation.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/ingest.hpp"
#include "linkprop/io.hpp"
#include "linkprop/labels.hpp"
#include "linkprop/propagation.hpp"
#include "linkprop/site_key.hpp"
#include "linkprop/synthgen.hpp"

#endif  // LINKPROP_LINKPROP_HPP_

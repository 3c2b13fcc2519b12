// Copyright 2026 The sio-enhance Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "sio/blocks.hpp"
#include "sio/channel.hpp"
#include "sio/core.hpp"
#include "sio/enhance.hpp"
#include "sio/io.hpp"
#include "sio/oracle.hpp"
#include "sio/perron.hpp"
#include "sio/state.hpp"
#include "sio/verify.hpp"

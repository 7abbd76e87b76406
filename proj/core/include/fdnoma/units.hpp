#pragma once

// Unit bridges. Everything inside the library is watts, meters and linear
// power gains; dB and dBm appear only in configuration and reports.

namespace fdnoma {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace fdnoma

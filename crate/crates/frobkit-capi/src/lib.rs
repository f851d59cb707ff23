//! C ABI surface; fleshed out below.

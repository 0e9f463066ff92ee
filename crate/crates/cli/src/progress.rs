//! Milestones of the running command, dumped to stderr on timeout.

use std::sync::Mutex;

static LOG: Mutex<Vec<String>> = Mutex::new(Vec::new());

pub fn note(msg: impl Into<String>) {
    let msg = msg.into();
    log::info!("{msg}");
    LOG.lock().unwrap_or_else(|e| e.into_inner()).push(msg);
}

pub fn snapshot() -> Vec<String> {
    LOG.lock().unwrap_or_else(|e| e.into_inner()).clone()
}

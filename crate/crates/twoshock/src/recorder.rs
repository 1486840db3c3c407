//! Instrumented step hook: co-integrates the shift system and evaluates
//! the functional ledger after every accepted step.

use crate::diagnostics::{LedgerContext, LedgerRow};
use crate::error::Result;
use crate::shifts::ShiftEngine;
use crate::solver::{FlowState, StepHook, StepStages};

pub struct RunRecorder<'a> {
    pub engine: ShiftEngine<'a>,
    pub ledger_ctx: LedgerContext<'a>,
    pub rows: Vec<LedgerRow>,
    /// evaluate the ledger every k-th step (1 = every step)
    pub ledger_every: usize,
    steps_seen: usize,
}

impl<'a> RunRecorder<'a> {
    pub fn new(engine: ShiftEngine<'a>, ledger_ctx: LedgerContext<'a>, ledger_every: usize) -> Self {
        Self {
            engine,
            ledger_ctx,
            rows: Vec::new(),
            ledger_every: ledger_every.max(1),
            steps_seen: 0,
        }
    }

    /// Records the t = 0 rows; call once before stepping.
    pub fn record_initial(&mut self, state0: &FlowState) {
        self.engine.record_initial(state0);
        let shifts = self.engine.state.shifts();
        let xdots = (self.engine.state.xdot1, self.engine.state.xdot2);
        self.rows.push(self.ledger_ctx.evaluate(state0, shifts, xdots));
    }
}

impl StepHook for RunRecorder<'_> {
    fn on_step(&mut self, stages: &StepStages<'_>) -> Result<()> {
        self.engine.on_step(stages)?;
        self.steps_seen += 1;
        if self.steps_seen % self.ledger_every == 0 {
            let shifts = self.engine.state.shifts();
            let xdots = (self.engine.state.xdot1, self.engine.state.xdot2);
            self.rows
                .push(self.ledger_ctx.evaluate(stages.s_new, shifts, xdots));
        }
        Ok(())
    }
}

use cabinet_psa::io::{render_svg, ResultDocument};
use cabinet_psa::psa::{OptimizationResult, PsaConfig};
use cabinet_psa::Component;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JobState {
    Queued,
    Running,
    Done,
    Failed,
}

/// A result document plus the rendered layout.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JobResult {
    #[serde(flatten)]
    pub document: ResultDocument,
    pub svg: String,
}

impl JobResult {
    pub fn new(result: &OptimizationResult, components: &[Component]) -> Self {
        Self {
            document: ResultDocument::from_psa(result),
            svg: render_svg(&result.recommended.placement, components, &result.recommended.objectives),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Job {
    pub job_id: String,
    pub state: JobState,
    pub cabinet_id: String,
    pub cabinet_version: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warm_from: Option<String>,
    pub config: PsaConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<JobResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Job {
    /// Moves forward only; a finished job never changes state again.
    pub(crate) fn advance(&mut self, next: JobState) {
        let rank = |s: JobState| match s {
            JobState::Queued => 0,
            JobState::Running => 1,
            JobState::Done | JobState::Failed => 2,
        };
        if rank(next) > rank(self.state) {
            self.state = next;
        }
    }
}

// Frozen output of the results pipeline's slope fit on
// fixtures/desk_scale_results.csv (extqv rows); the figure annotation must
// agree with these to 1e-9.
export const DESK_FIXTURE_SLOPE = 1.7128469288786325;
export const DESK_FIXTURE_INTERCEPT = 1.757829219703698;
export const DESK_FIXTURE_R2 = 0.9625249015957087;

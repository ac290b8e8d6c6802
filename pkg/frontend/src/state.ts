import { ApiError, OfflineError } from './api';
import type {
  CampaignBody,
  CategoryCode,
  ControlsForm,
  PlatformCode,
  PredictResponse,
  RatingLabel,
  RatingScore,
  WhatifResponse,
} from './types';

export const RATING_STEPS: readonly RatingScore[] = [0, 0.5, 1];

export const SCORE_BY_LABEL: Record<RatingLabel, RatingScore> = {
  None: 0,
  Partial: 0.5,
  Full: 1,
};

export const LABEL_BY_SCORE: Record<RatingScore, RatingLabel> = {
  0: 'None',
  0.5: 'Partial',
  1: 'Full',
};

/** One rating step up, or null when already Full. */
export function nextScore(score: RatingScore): RatingScore | null {
  const at = RATING_STEPS.indexOf(score);
  const next = RATING_STEPS[at + 1];
  return next === undefined ? null : next;
}

export type ControlErrors = Partial<Record<keyof ControlsForm, string>>;

const COUNT_FIELDS = ['figures', 'tables', 'videos', 'rewards'] as const;

/** Same rules the service applies: reject before any request is sent. */
export function validateControls(controls: ControlsForm): ControlErrors {
  const errors: ControlErrors = {};
  if (!Number.isInteger(controls.characters) || controls.characters < 1) {
    errors.characters = 'description length must be a whole number, at least 1';
  }
  if (!Number.isFinite(controls.goal) || controls.goal < 1) {
    errors.goal = 'funding goal must be at least 1';
  }
  for (const name of COUNT_FIELDS) {
    if (!Number.isInteger(controls[name]) || controls[name] < 0) {
      errors[name] = `${name} must be a whole number, 0 or more`;
    }
  }
  return errors;
}

export interface PredictionApi {
  predict(modelId: string, body: CampaignBody): Promise<PredictResponse>;
  whatif(modelId: string, body: CampaignBody): Promise<WhatifResponse>;
}

export interface SessionState {
  modelId: string;
  platform: PlatformCode;
  category: CategoryCode;
  ratings: Record<string, RatingScore>;
  answered: Record<string, boolean>;
  controls: ControlsForm;
  controlErrors: ControlErrors;
  prediction: PredictResponse | null;
  whatif: WhatifResponse | null;
  offline: boolean;
  serverError: string | null;
  finished: boolean;
}

export interface SessionOptions {
  modelId?: string;
  platform?: PlatformCode;
  category?: CategoryCode;
  controls?: ControlsForm;
}

const MINIMAL_CONTROLS: ControlsForm = {
  characters: 1,
  figures: 0,
  tables: 0,
  videos: 0,
  rewards: 0,
  team_intro: false,
  timeline: false,
  goal: 1,
};

type Listener = (state: SessionState) => void;

/**
 * Session state machine. Every mutation that changes the campaign triggers
 * a server round trip; responses land last-write-wins, so a stale in-flight
 * reply never overwrites a newer edit. No prediction math happens here.
 */
export class SessionStore {
  private state: SessionState;
  private readonly listeners = new Set<Listener>();
  private seq = 0;

  constructor(
    private readonly api: PredictionApi,
    readonly questionIds: readonly string[],
    options: SessionOptions = {},
  ) {
    const ratings: Record<string, RatingScore> = {};
    const answered: Record<string, boolean> = {};
    for (const qid of questionIds) {
      ratings[qid] = 0;
      answered[qid] = false;
    }
    const controls = options.controls ?? { ...MINIMAL_CONTROLS };
    this.state = {
      modelId: options.modelId ?? 'paper-baseline',
      platform: options.platform ?? 'KS',
      category: options.category ?? '3DP',
      ratings,
      answered,
      controls,
      controlErrors: validateControls(controls),
      prediction: null,
      whatif: null,
      offline: false,
      serverError: null,
      finished: false,
    };
  }

  get(): SessionState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(patch: Partial<SessionState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  answeredCount(): number {
    return this.questionIds.filter((qid) => this.state.answered[qid]).length;
  }

  isComplete(): boolean {
    return this.answeredCount() === this.questionIds.length;
  }

  /** Marks the wizard finished; refused until all questions are answered. */
  finish(): boolean {
    if (!this.isComplete()) return false;
    if (!this.state.finished) this.emit({ finished: true });
    return true;
  }

  setModel(modelId: string): Promise<void> {
    this.emit({ modelId });
    return this.refresh();
  }

  setGroup(platform: PlatformCode, category: CategoryCode): Promise<void> {
    this.emit({ platform, category });
    return this.refresh();
  }

  setRating(qid: string, score: number): Promise<void> {
    if (!(qid in this.state.ratings)) {
      throw new RangeError(`unknown question ${qid}`);
    }
    if (!RATING_STEPS.includes(score as RatingScore)) {
      throw new RangeError(`rating must be one of 0, 0.5, 1 (got ${score})`);
    }
    this.emit({
      ratings: { ...this.state.ratings, [qid]: score as RatingScore },
      answered: { ...this.state.answered, [qid]: true },
    });
    return this.refresh();
  }

  setControl<K extends keyof ControlsForm>(
    name: K,
    value: ControlsForm[K],
  ): Promise<void> {
    const controls = { ...this.state.controls, [name]: value };
    this.emit({ controls, controlErrors: validateControls(controls) });
    return this.refresh();
  }

  /**
   * Applies the one-step raise the what-if panel displayed for `factor`.
   * Returns false (and sends nothing) when the factor has no headroom.
   */
  async applyRaise(factor: string): Promise<boolean> {
    const entry = this.state.whatif?.improvements.find(
      (e) => e.factor === factor,
    );
    if (!entry || !entry.headroom) return false;
    const current = this.state.ratings[factor];
    if (current === undefined) return false;
    const next = nextScore(current);
    if (next === null) return false;
    await this.setRating(factor, next);
    return true;
  }

  private body(): CampaignBody {
    return {
      platform: this.state.platform,
      category: this.state.category,
      controls: { ...this.state.controls },
      ratings: { ...this.state.ratings },
    };
  }

  /**
   * One server round trip for the current campaign. Skipped entirely while
   * the controls form is invalid; a reply is dropped when a newer edit
   * started another request in the meantime.
   */
  async refresh(): Promise<void> {
    if (Object.keys(this.state.controlErrors).length > 0) return;
    const ticket = ++this.seq;
    const body = this.body();
    try {
      const [prediction, whatif] = await Promise.all([
        this.api.predict(this.state.modelId, body),
        this.api.whatif(this.state.modelId, body),
      ]);
      if (ticket !== this.seq) return;
      this.emit({ prediction, whatif, offline: false, serverError: null });
    } catch (error) {
      if (ticket !== this.seq) return;
      if (error instanceof OfflineError) {
        this.emit({ offline: true });
        return;
      }
      if (error instanceof ApiError) {
        this.emit({ offline: false, serverError: error.message });
        return;
      }
      throw error;
    }
  }
}

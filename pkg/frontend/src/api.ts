import type {
  CampaignBody,
  ModelSummary,
  PredictResponse,
  RubricDocument,
  WhatifResponse,
} from './types';

/** Non-2xx response from the prediction service. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

/** Transport failure: service unreachable, request never answered. */
export class OfflineError extends Error {
  constructor(cause: unknown) {
    super('prediction service unreachable');
    this.name = 'OfflineError';
    this.cause = cause;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (cause) {
    throw new OfflineError(cause);
  }
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

function post(body: unknown): RequestInit {
  return {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  };
}

/**
 * Client for the five service endpoints. All model math lives on the
 * server; this class only moves JSON.
 */
export class ApiClient {
  constructor(readonly baseUrl: string) {}

  getRubric(): Promise<RubricDocument> {
    return request(`${this.baseUrl}/rubric`);
  }

  getModels(): Promise<{ models: ModelSummary[] }> {
    return request(`${this.baseUrl}/models`);
  }

  getModel(modelId: string): Promise<Record<string, unknown>> {
    return request(`${this.baseUrl}/models/${modelId}`);
  }

  predict(modelId: string, body: CampaignBody): Promise<PredictResponse> {
    return request(`${this.baseUrl}/models/${modelId}/predict`, post(body));
  }

  whatif(modelId: string, body: CampaignBody): Promise<WhatifResponse> {
    return request(`${this.baseUrl}/models/${modelId}/whatif`, post(body));
  }
}
